//! Arbitrary-precision rationals and their string encoding.
//!
//! Values are [`BigRational`], which keeps numerator and denominator coprime
//! with a positive denominator. On the wire a rational is the string `"p/q"`,
//! or `"p"` when the denominator is one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Longest accepted textual rational. Bounds parsing cost on hostile input.
pub const MAX_RAT_LEN: usize = 4096;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p"`, `"p/q"` or a plain decimal such as `"-1.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let err = || Error::ParseRational(s.chars().take(64).collect());
    let t = s.trim();
    if t.is_empty() || t.len() > MAX_RAT_LEN {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_int(n).ok_or_else(err)?;
        let d = parse_int(d).ok_or_else(err)?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            parse_int(whole).ok_or_else(err)?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| err())?;
        let mag = whole.abs() * &scale + frac;
        let num = if negative { -mag } else { mag };
        return Ok(Rat::new(num, scale));
    }
    parse_int(t).map(Rat::from_integer).ok_or_else(err)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn gcd_of_numerators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, r| acc.gcd(r.numer()))
}

/// Scales a vector to coprime integers without changing its sign.
/// Returns the vector unchanged when it is zero.
pub fn primitive_vector(v: &[Rat]) -> Vec<Rat> {
    if v.iter().all(Zero::is_zero) {
        return v.to_vec();
    }
    let l = Rat::from_integer(lcm_of_denominators(v));
    let scaled: Vec<Rat> = v.iter().map(|x| x * &l).collect();
    let g = Rat::from_integer(gcd_of_numerators(&scaled));
    scaled.into_iter().map(|x| x / &g).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Serde adapters encoding rationals as strings.
pub mod serde_rat {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rat(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Rat>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_rat(s).map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod vec2 {
        use super::*;
        use serde::ser::SerializeSeq;

        struct Row<'a>(&'a [Rat]);

        impl serde::Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                super::vec::serialize(self.0, s)
            }
        }

        pub fn serialize<S: Serializer>(
            v: &[Vec<Rat>],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for row in v {
                seq.serialize_element(&Row(row))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Vec<Rat>>, D::Error> {
            let v = Vec::<Vec<String>>::deserialize(d)?;
            v.iter()
                .map(|row| {
                    row.iter()
                        .map(|s| parse_rat(s).map_err(D::Error::custom))
                        .collect()
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3").unwrap(), rat(3));
        assert_eq!(parse_rat("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rat(" 1/-2 ").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rat("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rat("0.5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rat(".5").unwrap(), ratio(1, 2));
    }

    #[test]
    fn parse_rejects() {
        for bad in ["", "1/0", "a", "1/", "/2", "1.", "1.2.3", "--1", "1e5", "+"] {
            assert!(parse_rat(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn format_canonical() {
        assert_eq!(format_rat(&ratio(4, 2)), "2");
        assert_eq!(format_rat(&ratio(2, -4)), "-1/2");
        assert_eq!(format_rat(&rat(0)), "0");
    }

    #[test]
    fn primitive_keeps_sign() {
        let v = primitive_vector(&[ratio(-1, 2), ratio(1, 3), rat(0)]);
        assert_eq!(v, vec![rat(-3), rat(2), rat(0)]);
    }
}
