//! Exact integral circulant determinants of odd prime-power order.
//!
//! The library computes Lind-Mahler measures M_n(F) for n = p^t by splitting
//! them into the integer norms N_k(F), classifies primes through pi-adic unit
//! reduction in the rings Z[omega_5], Z[omega_3] and Z[omega_9] (with four
//! independent cross-checking oracles), decides membership of a value among
//! the 25x25 and 27x27 circulant determinants, constructs verified witness
//! polynomials, and runs desk-scale exhaustive searches over coefficient
//! boxes with exact re-verification of every emitted record.

pub mod arith;
pub mod error;
pub mod poly;

pub mod cyclo;
pub mod measure;

pub mod classify;
pub mod membership;
pub mod witness;

pub mod audit;
pub mod search;
pub mod tables;

pub use error::{Error, Result};
pub use poly::{cyclotomic_poly, resultant, IntPoly};

/// Serialize big integers as decimal strings; measures overrun 64 bits fast.
pub mod serde_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub mod serde_bigint_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.into_iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}
