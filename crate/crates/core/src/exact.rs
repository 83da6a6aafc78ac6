//! Serde adapters for exact values.
//!
//! Rationals are written as `{"num": "..", "den": ".."}` in lowest terms with
//! a positive denominator; integers as decimal strings. Strings keep values
//! beyond 64 bits intact in every JSON reader.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct Pair {
    num: String,
    den: String,
}

fn to_pair(x: &BigRational) -> Pair {
    // Ratio keeps itself reduced with a positive denominator
    Pair { num: x.numer().to_string(), den: x.denom().to_string() }
}

fn from_pair<E: serde::de::Error>(p: Pair) -> Result<BigRational, E> {
    let num: BigInt = p.num.parse().map_err(E::custom)?;
    let den: BigInt = p.den.parse().map_err(E::custom)?;
    if den.is_zero() {
        return Err(E::custom("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        to_pair(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        from_pair(Pair::deserialize(d)?)
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(to_pair))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<Pair>::deserialize(d)?.into_iter().map(from_pair).collect()
    }
}

pub mod rational_map {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &BTreeMap<u32, BigRational>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(xs.iter().map(|(k, v)| (k, to_pair(v))))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u32, BigRational>, D::Error> {
        BTreeMap::<u32, Pair>::deserialize(d)?.into_iter().map(|(k, v)| Ok((k, from_pair(v)?))).collect()
    }
}

pub mod integer {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Wrap {
        #[serde(with = "rational")]
        x: BigRational,
        #[serde(with = "rational_vec")]
        xs: Vec<BigRational>,
    }

    #[test]
    fn lowest_terms_round_trip() {
        let w = Wrap { x: rat(6, -8), xs: vec![rat(0, 5), rat(4, 2)] };
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"x":{"num":"-3","den":"4"},"xs":[{"num":"0","den":"1"},{"num":"2","den":"1"}]}"#);
        assert_eq!(serde_json::from_str::<Wrap>(&json).unwrap(), w);
        assert!(serde_json::from_str::<Wrap>(r#"{"x":{"num":"1","den":"0"},"xs":[]}"#).is_err());
    }
}
