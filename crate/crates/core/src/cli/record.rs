//! Result records and their JSON and CSV renderings.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{self, Field, Scalar};
use crate::{QuadraticNumber, Rational, SequenceEntry};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ExactValue {
    Rational(String),
    Quadratic { a: String, b: String, c: u64 },
}

impl ExactValue {
    pub fn from_quadratic(x: &QuadraticNumber) -> Self {
        match x.as_rational() {
            Some(q) => ExactValue::Rational(scalar::format_rational(q)),
            None => ExactValue::Quadratic {
                a: scalar::format_rational(x.a()),
                b: scalar::format_rational(x.b()),
                c: x.c(),
            },
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        ExactValue::Rational(scalar::format_rational(q))
    }

    pub fn to_quadratic(&self) -> Option<QuadraticNumber> {
        match self {
            ExactValue::Rational(s) => scalar::parse_rational(s).ok().map(QuadraticNumber::rational),
            ExactValue::Quadratic { a, b, c } => Some(QuadraticNumber::new(
                scalar::parse_rational(a).ok()?,
                scalar::parse_rational(b).ok()?,
                *c,
            )),
        }
    }

    fn csv(&self) -> String {
        match self {
            ExactValue::Rational(s) => s.clone(),
            ExactValue::Quadratic { a, b, c } => format!("{a}+{b}*sqrt({c})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceRow {
    pub index: u64,
    pub value: String,
    pub normalized: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceTable {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<SequenceRow>,
}

impl SequenceTable {
    pub fn new(name: &str, columns: [&str; 3], entries: &[SequenceEntry]) -> Self {
        SequenceTable {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: entries
                .iter()
                .map(|e| SequenceRow {
                    index: e.index,
                    value: scalar::format_rational(&e.value),
                    normalized: scalar::format_rational(&e.normalized),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Holds,
    Fails,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckOutcome {
    pub statement: String,
    pub status: CheckStatus,
    pub details: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultRecord {
    pub input: serde_json::Value,
    pub exact_value: ExactValue,
    pub float_value: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sequences: Vec<SequenceTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckOutcome>,
    pub provenance: String,
}

impl ResultRecord {
    pub fn new(input: serde_json::Value, value: &QuadraticNumber, provenance: &str) -> Self {
        ResultRecord {
            input,
            exact_value: ExactValue::from_quadratic(value),
            float_value: round_significant(value, 12).parse().expect("decimal rendering"),
            sequences: Vec::new(),
            check: None,
            provenance: provenance.into(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self.sequences.first() {
            Some(t) => {
                out.push_str(&t.columns.join(","));
                out.push('\n');
                for r in &t.rows {
                    out.push_str(&format!("{},{},{}\n", r.index, r.value, r.normalized));
                }
            }
            None => {
                out.push_str("exact,float\n");
                out.push_str(&format!("{},{}\n", self.exact_value.csv(), self.float_value));
            }
        }
        out
    }
}

fn pow10(e: i64) -> Rational {
    let p = Rational::from_integer(num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize));
    if e >= 0 {
        p
    } else {
        Rational::one() / p
    }
}

/// Decimal rendering of `x` correctly rounded (half away from zero) to
/// `digits` significant digits, in scientific notation.
pub fn round_significant(x: &QuadraticNumber, digits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_neg();
    let ax = x.abs_val();
    let mut e = ax.to_f64().log10().floor() as i64;
    loop {
        let lo = QuadraticNumber::from_rational(&pow10(e));
        let hi = QuadraticNumber::from_rational(&pow10(e + 1));
        if ax.partial_cmp(&lo) == Some(Ordering::Less) {
            e -= 1;
        } else if ax.partial_cmp(&hi) != Some(Ordering::Less) {
            e += 1;
        } else {
            break;
        }
    }
    let shift = digits as i64 - 1 - e;
    let scaled = ax * QuadraticNumber::from_rational(&pow10(shift));
    let mut n = (scaled + QuadraticNumber::from_rational(&scalar::rat(1, 2))).floor();
    if n == num_traits::pow(BigInt::from(10), digits as usize) {
        n /= 10;
        e += 1;
    }
    let s = n.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let mantissa = if tail.is_empty() { head.to_string() } else { format!("{head}.{tail}") };
    format!("{}{}e{}", if neg { "-" } else { "" }, mantissa, e)
}
