//! The fixed enumeration ℚ = {q_1, q_2, ...} and the summable length
//! sequence behind the open cover U of ℚ.
//!
//! The scheme interleaves signs over the Calkin–Wilf walk of the positive
//! rationals: q_1 = 0, q_{2k} = c_k, q_{2k+1} = -c_k, where c_k is the k-th
//! entry of the Calkin–Wilf sequence 1, 1/2, 2, 1/3, 3/2, ... Both directions
//! (index → rational, rational → index) are closed-form walks over the binary
//! expansion of the index, so no duplicate-skipping state is ever needed.

use crate::rational::{inv_pow2, Rat};
use crate::sets::{FamilyDescriptor, FamilyShape, SetExpr};
use num::bigint::{BigInt, BigUint};
use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Identifier of the rational enumeration in certificates and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnumerationScheme {
    #[serde(rename = "calkin-wilf-signed")]
    CalkinWilfSigned,
}

impl EnumerationScheme {
    pub fn id(self) -> &'static str {
        "calkin-wilf-signed"
    }
}

/// Identifier of the length sequence: `Geometric` gives s_i = total * 2^{-i},
/// whose partial sums and tails stay exact rationals in closed form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LengthRule {
    #[serde(rename = "geometric")]
    Geometric {
        #[serde(
            serialize_with = "crate::rational::serialize_rat",
            deserialize_with = "crate::rational::deserialize_rat"
        )]
        total: Rat,
    },
}

impl LengthRule {
    pub fn id(&self) -> &'static str {
        "geometric"
    }

    /// Exact series total Σ s_i.
    pub fn total(&self) -> Rat {
        match self {
            LengthRule::Geometric { total } => total.clone(),
        }
    }

    /// s_i for 1-based i.
    pub fn length(&self, i: u32) -> Rat {
        match self {
            LengthRule::Geometric { total } => total * inv_pow2(i),
        }
    }

    /// Σ_{i<=n} s_i = total * (1 - 2^{-n}), exactly.
    pub fn partial_sum(&self, n: u32) -> Rat {
        match self {
            LengthRule::Geometric { total } => total * (Rat::one() - inv_pow2(n)),
        }
    }

    /// Σ_{i>n} s_i = total * 2^{-n}, exactly.
    pub fn tail(&self, n: u32) -> Rat {
        match self {
            LengthRule::Geometric { total } => total * inv_pow2(n),
        }
    }
}

/// k-th entry of the Calkin–Wilf sequence (1-based): descend the tree along
/// the binary expansion of k below its leading bit.
fn calkin_wilf(k: &BigUint) -> (BigUint, BigUint) {
    debug_assert!(!k.is_zero());
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let bits = k.bits();
    for pos in (0..bits.saturating_sub(1)).rev() {
        if k.bit(pos) {
            num += &den; // right child: (a+b)/b
        } else {
            den += &num; // left child: a/(a+b)
        }
    }
    (num, den)
}

/// Inverse Calkin–Wilf walk: index of the positive rational p/q in the
/// sequence. Pre: p, q > 0 and gcd(p, q) = 1.
fn calkin_wilf_index(p: &BigUint, q: &BigUint) -> BigUint {
    let mut a = p.clone();
    let mut b = q.clone();
    let mut bits = Vec::new();
    while !(a.is_one() && b.is_one()) {
        if a < b {
            b -= &a;
            bits.push(false);
        } else {
            a -= &b;
            bits.push(true);
        }
    }
    let mut k = BigUint::one();
    for bit in bits.into_iter().rev() {
        k <<= 1;
        if bit {
            k |= BigUint::one();
        }
    }
    k
}

/// q_i under the fixed scheme (1-based index).
pub fn nth_rational(i: &BigUint) -> Rat {
    assert!(!i.is_zero(), "enumeration is 1-based");
    if i.is_one() {
        return Rat::zero();
    }
    let two = BigUint::from(2u32);
    let half = i / &two;
    let (num, den) = calkin_wilf(&half);
    let value = BigRational::new(BigInt::from(num), BigInt::from(den));
    if (i % &two).is_zero() {
        value
    } else {
        -value
    }
}

/// Convenience for small indices.
pub fn nth_rational_u32(i: u32) -> Rat {
    nth_rational(&BigUint::from(i))
}

/// Index with `nth_rational(index_of(q)) == q`; total on ℚ.
pub fn index_of(q: &Rat) -> BigUint {
    if q.is_zero() {
        return BigUint::one();
    }
    let p = q.numer().magnitude().clone();
    let den = q.denom().magnitude().clone();
    let k = calkin_wilf_index(&p, &den);
    let two = BigUint::from(2u32);
    if q.is_positive() {
        k * two
    } else {
        k * two + BigUint::one()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("total length must be positive, got {0}")]
    NonPositiveTotal(String),
}

/// The open cover U = ⋃ U_i of ℚ with total length budget a: the i-th
/// member is the open interval of length s_i centered at q_i. Every rational
/// lies in the member it indexes, so ℚ ⊆ U by construction.
pub fn build_paper_u(a: Rat) -> Result<SetExpr, EnumerationError> {
    if !a.is_positive() {
        return Err(EnumerationError::NonPositiveTotal(
            crate::rational::fmt_rat(&a),
        ));
    }
    Ok(SetExpr::Family(FamilyDescriptor {
        enumeration: EnumerationScheme::CalkinWilfSigned,
        lengths: LengthRule::Geometric { total: a },
        shape: FamilyShape::CenteredInterval,
    }))
}
