//! Exact rational scalars and their canonical `"p/q"` text form.
//!
//! Every scalar in this crate is a [`Rational`]; floating point never
//! appears. Serialized rationals are always the reduced form `"p/q"` with
//! `q >= 1` (so `256` prints as `"256/1"`), which keeps certificates
//! bit-exact and diffable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `p/q`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

/// Sign of a rational as -1, 0, or +1.
pub fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Canonical text form `"p/q"`, always including the denominator.
pub fn fmt_rat(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"`, `"p"`, or a decimal-free integer string into a rational.
pub fn parse_rat(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected rational \"p/q\", got {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

/// Parses a comma-separated rational vector such as `"1/2,1/2"`.
pub fn parse_rat_vec(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rat).collect()
}

pub fn fmt_rat_vec(v: &[Rational]) -> String {
    v.iter().map(fmt_rat).collect::<Vec<_>>().join(",")
}

/// Serde adapter: a single rational as `"p/q"` (accepts integers on input).
pub mod rat_serde {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Str(String),
    }

    pub fn serialize<S: Serializer>(r: &Rational, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Rational, D::Error> {
        match Repr::deserialize(de)? {
            Repr::Int(n) => Ok(rat(n)),
            Repr::Str(s) => parse_rat(&s).map_err(D::Error::custom),
        }
    }
}

/// Serde adapter: `Vec<Rational>` as an array of `"p/q"` strings.
pub mod rat_vec_serde {
    use super::*;
    use serde::de::Error as _;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Str(String),
    }

    pub fn serialize<S: Serializer>(v: &[Rational], ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&fmt_rat(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<Repr>::deserialize(de)?;
        raw.into_iter()
            .map(|x| match x {
                Repr::Int(n) => Ok(rat(n)),
                Repr::Str(s) => parse_rat(&s).map_err(D::Error::custom),
            })
            .collect()
    }
}

/// Serde adapter: optional rational.
pub mod rat_opt_serde {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        r: &Option<Rational>,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => ser.serialize_some(&fmt_rat(r)),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        let raw = Option::<String>::deserialize(de)?;
        raw.map(|s| parse_rat(&s).map_err(D::Error::custom)).transpose()
    }
}

/// Exact lcm of denominators, used when clearing a row to integers.
pub fn denominator_lcm(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, r| num_integer::lcm(acc, r.denom().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_canonical_form() {
        for s in ["1/2", "-3/4", "256/1", "0/1"] {
            assert_eq!(fmt_rat(&parse_rat(s).unwrap()), s);
        }
        // normalization
        assert_eq!(fmt_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(fmt_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert_eq!(fmt_rat(&parse_rat("7").unwrap()), "7/1");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn vector_parsing() {
        let v = parse_rat_vec("1/2, 1/2").unwrap();
        assert_eq!(v, vec![frac(1, 2), frac(1, 2)]);
        assert_eq!(fmt_rat_vec(&v), "1/2,1/2");
    }
}
