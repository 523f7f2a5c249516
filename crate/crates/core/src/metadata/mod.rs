//! Agreement between the identified language of a chat message and the
//! metadata sent with it: the browser's `Accept-Language` header and the
//! languages of the visitor's country.

mod accept_language;
mod agreement;
mod country;
mod record;

pub use accept_language::{parse_accept_language, AcceptLanguage, LanguageRange};
pub use agreement::{
    aggregate, evaluate_record, AgreementRecord, AgreementReport, BucketCounts, BucketFractions,
    LengthBin, MatchBucket,
};
pub use country::{country_languages, CountryLanguageTable};
pub use record::{parse_chat_records, ChatRecord};
