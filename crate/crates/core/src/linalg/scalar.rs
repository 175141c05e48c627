use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Arbitrary-precision rational number. Always kept in lowest terms with a
/// positive denominator.
pub type Scalar = BigRational;

pub fn scalar_from_i64(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// Text form `p/q`, with `/q` omitted when the denominator is one.
pub fn format_scalar(s: &Scalar) -> String {
    s.to_string()
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let parsed: Scalar = text
        .parse()
        .map_err(|_| Error::Parse(format!("not a rational number: {text:?}")))?;
    Ok(parsed)
}
