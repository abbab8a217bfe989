use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact parameters of the rainbow-path bound for path order `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsParameters {
    pub s: u32,
    /// `4 * (s-1)^(2(s-1))`, i.e. `4 * 2^(2(s-1) log2(s-1))`.
    #[serde(serialize_with = "decimal")]
    pub r: BigUint,
    /// `w_s, w_(s-1), ..., w_1` with `w_s = 0` and `w_j = w_(j+1) * r + 1`.
    #[serde(serialize_with = "decimal_seq")]
    pub w: Vec<BigUint>,
    /// `(w_1 + 1) * r`.
    #[serde(serialize_with = "decimal")]
    pub c: BigUint,
}

fn decimal<S: Serializer>(value: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_str_radix(10))
}

fn decimal_seq<S: Serializer>(values: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_str_radix(10)))
}

impl BoundsParameters {
    pub fn w1(&self) -> &BigUint {
        self.w.last().expect("w has s entries")
    }

    /// `(r^(s-1) - 1) / (r - 1)`, the geometric-series form of `w_1`.
    pub fn closed_form_w1(&self) -> BigUint {
        let one = BigUint::one();
        (self.r.pow(self.s - 1) - &one) / (&self.r - &one)
    }
}

pub fn compute_bounds(s: u32) -> Result<BoundsParameters> {
    if s < 3 {
        return Err(Error::InvalidParameter(format!("path order s must be at least 3, got {s}")));
    }
    let base = BigUint::from(s - 1);
    let r = BigUint::from(4u32) * base.pow(2 * (s - 1));
    let mut w = Vec::with_capacity(s as usize);
    let mut current = BigUint::zero();
    w.push(current.clone());
    for _ in 1..s {
        current = &current * &r + BigUint::one();
        w.push(current.clone());
    }
    let c = (w.last().expect("nonempty") + BigUint::one()) * &r;
    Ok(BoundsParameters { s, r, w, c })
}

/// Largest path order `s` the bound guarantees for chromatic number `chi`:
/// 1 for any nonempty graph, 2 once there is an edge, and otherwise the
/// largest `s >= 3` with `chi > c(s)`. Returns 0 for `chi = 0`.
pub fn guaranteed_length(chi: &BigUint) -> u32 {
    if chi.is_zero() {
        return 0;
    }
    if *chi < BigUint::from(2u32) {
        return 1;
    }
    let mut s = 2;
    while *chi > compute_bounds(s + 1).expect("s + 1 >= 3").c {
        s += 1;
    }
    s
}

pub fn guaranteed_length_u64(chi: u64) -> u32 {
    guaranteed_length(&BigUint::from(chi))
}
