//! Coefficient rings: rationals, truncated power series in `h`, and their
//! extensions by an auxiliary nilpotent parameter `l`, optionally with
//! bounded poles in `h`.
//!
//! A [`Scalar`] is a finite sum of `q * h^i * l^j`. Exponents at or above the
//! truncation orders are dropped (that is the quotient ring), but an `h`
//! exponent below the pole bound is an error: that is not a quotient.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("scalars from different rings: {left} vs {right}")]
    ModeMismatch { left: Ring, right: Ring },
    #[error("h-exponent {exponent} below the pole bound -{bound}; raise P to at least {}", -exponent)]
    PoleOverflow { exponent: i32, bound: u32 },
    #[error("scalar is not in the maximal ideal")]
    NotInMaximalIdeal,
    #[error("invalid ring parameters: {0}")]
    InvalidRing(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// Plain rationals.
    K,
    /// `Q[h]/(h^H)`.
    Hbar,
    /// `Q[h, l]/(h^H, l^L)`.
    HbarAux,
    /// Laurent in `h` (poles down to `h^-P`), nilpotent `l`; here `h` is a unit.
    LaurentAux,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::K => "k",
            Mode::Hbar => "hbar",
            Mode::HbarAux => "hbar-aux",
            Mode::LaurentAux => "laurent-aux",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "k" => Some(Mode::K),
            "hbar" => Some(Mode::Hbar),
            "hbar-aux" => Some(Mode::HbarAux),
            "laurent-aux" => Some(Mode::LaurentAux),
            _ => None,
        }
    }
}

/// Ring parameters: `h^H = 0`, `l^L = 0`, `h`-exponents `>= -P` admitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    mode: Mode,
    hbar_order: u32,
    aux_order: u32,
    pole_bound: u32,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}(H={},L={},P={})",
            self.mode.name(),
            self.hbar_order,
            self.aux_order,
            self.pole_bound
        )
    }
}

impl Ring {
    pub fn new(
        mode: Mode,
        hbar_order: u32,
        aux_order: u32,
        pole_bound: u32,
    ) -> Result<Ring, ScalarError> {
        let bad = |msg: &str| {
            Err(ScalarError::InvalidRing(format!(
                "{msg} for mode {}",
                mode.name()
            )))
        };
        if hbar_order == 0 || aux_order == 0 {
            return bad("H and L must be positive");
        }
        match mode {
            Mode::K if hbar_order != 1 || aux_order != 1 || pole_bound != 0 => {
                return bad("need H=1, L=1, P=0")
            }
            Mode::Hbar if aux_order != 1 || pole_bound != 0 => return bad("need L=1, P=0"),
            Mode::HbarAux if pole_bound != 0 => return bad("need P=0"),
            _ => {}
        }
        Ok(Ring {
            mode,
            hbar_order,
            aux_order,
            pole_bound,
        })
    }

    pub fn rationals() -> Ring {
        Ring {
            mode: Mode::K,
            hbar_order: 1,
            aux_order: 1,
            pole_bound: 0,
        }
    }

    pub fn hbar(hbar_order: u32) -> Ring {
        Ring::new(Mode::Hbar, hbar_order, 1, 0).expect("positive order")
    }

    pub fn hbar_aux(hbar_order: u32, aux_order: u32) -> Ring {
        Ring::new(Mode::HbarAux, hbar_order, aux_order, 0).expect("positive orders")
    }

    pub fn laurent_aux(hbar_order: u32, aux_order: u32, pole_bound: u32) -> Ring {
        Ring::new(Mode::LaurentAux, hbar_order, aux_order, pole_bound).expect("positive orders")
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }
    pub fn hbar_order(&self) -> u32 {
        self.hbar_order
    }
    pub fn aux_order(&self) -> u32 {
        self.aux_order
    }
    pub fn pole_bound(&self) -> u32 {
        self.pole_bound
    }

    /// Whether `h^i l^j` is a representable, nonzero monomial.
    fn admits(&self, i: i32, j: u32) -> bool {
        i < self.hbar_order as i32 && j < self.aux_order && i >= -(self.pole_bound as i32)
    }

    /// Valuation of `h^i l^j` with respect to the maximal ideal.
    pub fn ideal_order(&self, i: i32, j: u32) -> u32 {
        match self.mode {
            Mode::K => 0,
            Mode::Hbar | Mode::HbarAux => i.max(0) as u32 + j,
            Mode::LaurentAux => j,
        }
    }

    /// Smallest `N` with `m^N = 0`.
    pub fn ideal_nilpotency(&self) -> u32 {
        match self.mode {
            Mode::K => 1,
            Mode::Hbar => self.hbar_order,
            Mode::HbarAux => self.hbar_order + self.aux_order - 1,
            Mode::LaurentAux => self.aux_order,
        }
    }

    /// Every representable monomial `h^i l^j`, in increasing order.
    pub fn monomials(&self) -> Vec<(i32, u32)> {
        let lo = -(self.pole_bound as i32);
        (lo..self.hbar_order as i32)
            .flat_map(|i| (0..self.aux_order).map(move |j| (i, j)))
            .collect()
    }

    /// The monomials lying in the maximal ideal.
    pub fn ideal_monomials(&self) -> Vec<(i32, u32)> {
        self.monomials()
            .into_iter()
            .filter(|&(i, j)| self.ideal_order(i, j) > 0)
            .collect()
    }

    /// Whether the ring has `h` at all (every mode except `K`).
    pub fn has_hbar(&self) -> bool {
        self.mode != Mode::K
    }
}

/// An element of the coefficient ring of a fixed [`Ring`].
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    ring: Ring,
    terms: BTreeMap<(i32, u32), BigRational>,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((i, j), q)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{q}")?;
            if *i != 0 {
                write!(f, "*h^{i}")?;
            }
            if *j != 0 {
                write!(f, "*l^{j}")?;
            }
        }
        Ok(())
    }
}

impl Scalar {
    pub fn zero(ring: Ring) -> Scalar {
        Scalar {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Scalar {
        Scalar::rational(ring, BigRational::one())
    }

    pub fn int(ring: Ring, n: i64) -> Scalar {
        Scalar::rational(ring, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(ring: Ring, q: BigRational) -> Scalar {
        let mut s = Scalar::zero(ring);
        if !q.is_zero() {
            s.terms.insert((0, 0), q);
        }
        s
    }

    /// `q * h^i * l^j`; zero when truncated away, error below the pole bound.
    pub fn monomial(ring: Ring, i: i32, j: u32, q: BigRational) -> Result<Scalar, ScalarError> {
        let mut s = Scalar::zero(ring);
        if q.is_zero() || j >= ring.aux_order || i >= ring.hbar_order as i32 {
            return Ok(s);
        }
        if i < -(ring.pole_bound as i32) {
            return Err(ScalarError::PoleOverflow {
                exponent: i,
                bound: ring.pole_bound,
            });
        }
        s.terms.insert((i, j), q);
        Ok(s)
    }

    pub fn hbar(ring: Ring) -> Scalar {
        Scalar::monomial(ring, 1, 0, BigRational::one()).unwrap_or_else(|_| Scalar::zero(ring))
    }

    pub fn aux(ring: Ring) -> Scalar {
        Scalar::monomial(ring, 0, 1, BigRational::one()).unwrap_or_else(|_| Scalar::zero(ring))
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|q| q.is_one())
    }

    /// Nonzero terms as `((h-exponent, l-exponent), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(i32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: i32, j: u32) -> BigRational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn check_ring(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.ring != other.ring {
            return Err(ScalarError::ModeMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, key: (i32, u32), q: &BigRational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `self += c * other`, assuming equal rings.
    pub(crate) fn add_scaled_assign(&mut self, other: &Scalar, c: &BigRational) {
        for (k, q) in &other.terms {
            self.add_term(*k, &(q * c));
        }
    }

    pub(crate) fn add_assign_same(&mut self, other: &Scalar) {
        for (k, q) in &other.terms {
            self.add_term(*k, q);
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_assign_same(other);
        Ok(out)
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_scaled_assign(other, &-BigRational::one());
        Ok(out)
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_ring(other)?;
        let mut out = Scalar::zero(self.ring);
        // Short paths for the very common rational-constant case.
        if let Some(q) = self.as_rational() {
            out.add_scaled_assign(other, &q);
            return Ok(out);
        }
        if let Some(q) = other.as_rational() {
            out.add_scaled_assign(self, &q);
            return Ok(out);
        }
        for ((i1, j1), q1) in &self.terms {
            for ((i2, j2), q2) in &other.terms {
                let (i, j) = (i1 + i2, j1 + j2);
                if j >= self.ring.aux_order || i >= self.ring.hbar_order as i32 {
                    continue;
                }
                if !self.ring.admits(i, j) {
                    return Err(ScalarError::PoleOverflow {
                        exponent: i,
                        bound: self.ring.pole_bound,
                    });
                }
                out.add_term((i, j), &(q1 * q2));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Scalar {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, q: &BigRational) -> Scalar {
        let mut out = Scalar::zero(self.ring);
        out.add_scaled_assign(self, q);
        out
    }

    /// The rational value if this scalar is a constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn pow(&self, k: u32) -> Result<Scalar, ScalarError> {
        let mut acc = Scalar::one(self.ring);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiply by `h^shift`.
    pub fn shift_hbar(&self, shift: i32) -> Result<Scalar, ScalarError> {
        let mut out = Scalar::zero(self.ring);
        for ((i, j), q) in &self.terms {
            let i = i + shift;
            if i >= self.ring.hbar_order as i32 {
                continue;
            }
            if i < -(self.ring.pole_bound as i32) {
                return Err(ScalarError::PoleOverflow {
                    exponent: i,
                    bound: self.ring.pole_bound,
                });
            }
            out.terms.insert((i, *j), q.clone());
        }
        Ok(out)
    }

    pub fn in_maximal_ideal(&self) -> bool {
        match self.ring.mode {
            Mode::K => self.is_zero(),
            Mode::Hbar | Mode::HbarAux => {
                !self.terms.contains_key(&(0, 0)) && self.min_hbar_exponent().is_none_or(|i| i >= 0)
            }
            Mode::LaurentAux => self.terms.keys().all(|&(_, j)| j > 0),
        }
    }

    /// Reduction modulo the maximal ideal: the generators of the ideal are set
    /// to zero.
    pub fn mod_maximal_ideal(&self) -> Scalar {
        let mut out = Scalar::zero(self.ring);
        for (&(i, j), q) in &self.terms {
            if self.ring.ideal_order(i, j) == 0 {
                out.terms.insert((i, j), q.clone());
            }
        }
        out
    }

    pub fn min_hbar_exponent(&self) -> Option<i32> {
        self.terms.keys().map(|&(i, _)| i).min()
    }

    /// Valuation with respect to the maximal ideal; `None` for zero.
    pub fn ideal_valuation(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| self.ring.ideal_order(i, j))
            .min()
    }

    /// The coefficient of `h^i`, as a scalar in `l` alone.
    pub fn hbar_component(&self, i: i32) -> Scalar {
        let mut out = Scalar::zero(self.ring);
        for (&(ii, j), q) in &self.terms {
            if ii == i {
                out.terms.insert((0, j), q.clone());
            }
        }
        out
    }

    /// Exponential series, finite because the argument is nilpotent.
    pub fn exp(&self) -> Result<Scalar, ScalarError> {
        if !self.in_maximal_ideal() {
            return Err(ScalarError::NotInMaximalIdeal);
        }
        let mut sum = Scalar::one(self.ring);
        let mut power = Scalar::one(self.ring);
        let mut k: i64 = 0;
        loop {
            k += 1;
            power = power
                .mul(self)?
                .scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            if power.is_zero() {
                return Ok(sum);
            }
            sum.add_assign_same(&power);
        }
    }

    /// Whether every coefficient is an integer (used for pretty output only).
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|q| q.is_integer())
    }

    pub fn is_negative_constant(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_negative())
    }
}

/// `scalar_arith` in one call: `a (op) b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    }
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        rat(p, d)
    }

    #[test]
    fn square_of_one_plus_h_truncates() {
        let r = Ring::hbar(2);
        let a = Scalar::one(r).add(&Scalar::hbar(r)).unwrap();
        let sq = a.mul(&a).unwrap();
        let expected = Scalar::one(r)
            .add(&Scalar::hbar(r).scale(&q(2, 1)))
            .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn pole_overflow_is_an_error() {
        let r = Ring::laurent_aux(2, 3, 1);
        let a = Scalar::monomial(r, -1, 1, q(1, 1)).unwrap();
        assert!(matches!(
            a.mul(&a),
            Err(ScalarError::PoleOverflow {
                exponent: -2,
                bound: 1
            })
        ));
    }

    #[test]
    fn exact_cancellation() {
        let r = Ring::hbar(3);
        let a = Scalar::rational(r, q(1, 2))
            .add(&Scalar::hbar(r).scale(&q(1, 3)))
            .unwrap();
        let b = Scalar::rational(r, q(1, 2))
            .sub(&Scalar::hbar(r).scale(&q(1, 3)))
            .unwrap();
        assert!(a.add(&b).unwrap().is_one());
    }

    #[test]
    fn mode_mismatch() {
        let a = Scalar::one(Ring::hbar(2));
        let b = Scalar::one(Ring::hbar(3));
        assert!(matches!(a.add(&b), Err(ScalarError::ModeMismatch { .. })));
        assert!(matches!(
            scalar_arith(&a, &b, ArithOp::Mul),
            Err(ScalarError::ModeMismatch { .. })
        ));
    }

    #[test]
    fn maximal_ideal_membership() {
        assert!(Scalar::hbar(Ring::hbar(2)).in_maximal_ideal());
        let r = Ring::laurent_aux(2, 2, 1);
        assert!(Scalar::monomial(r, -1, 1, q(1, 1))
            .unwrap()
            .in_maximal_ideal());
        assert!(!Scalar::monomial(r, -1, 0, q(1, 1))
            .unwrap()
            .in_maximal_ideal());
        assert!(Scalar::zero(Ring::rationals()).in_maximal_ideal());
        assert!(!Scalar::one(Ring::rationals()).in_maximal_ideal());
        assert!(!Scalar::one(Ring::hbar_aux(2, 2)).in_maximal_ideal());
    }

    /// Term-by-term Taylor expansion: accumulate `a^k / k!` using `pow`.
    fn taylor_oracle(a: &Scalar, order: u32) -> Scalar {
        let mut sum = Scalar::zero(a.ring());
        for k in 0..order {
            let term = a
                .pow(k)
                .unwrap()
                .scale(&BigRational::new(BigInt::one(), factorial(k as usize)));
            sum = sum.add(&term).unwrap();
        }
        sum
    }

    #[test]
    fn exp_examples() {
        let r = Ring::hbar(3);
        assert!(Scalar::zero(r).exp().unwrap().is_one());
        let e = Scalar::hbar(r).exp().unwrap();
        assert_eq!(e, taylor_oracle(&Scalar::hbar(r), 3));
        let frozen = Scalar::one(r)
            .add(&Scalar::hbar(r))
            .unwrap()
            .add(&Scalar::monomial(r, 2, 0, q(1, 2)).unwrap())
            .unwrap();
        assert_eq!(e, frozen);

        let r = Ring::laurent_aux(1, 3, 2);
        let a = Scalar::monomial(r, -1, 1, q(1, 1)).unwrap();
        let e = a.exp().unwrap();
        assert_eq!(e, taylor_oracle(&a, 3));
        let frozen = Scalar::one(r)
            .add(&a)
            .unwrap()
            .add(&Scalar::monomial(r, -2, 2, q(1, 2)).unwrap())
            .unwrap();
        assert_eq!(e, frozen);
        assert!(matches!(
            Scalar::one(r).exp(),
            Err(ScalarError::NotInMaximalIdeal)
        ));
    }

    #[test]
    fn ring_validation() {
        assert!(Ring::new(Mode::K, 2, 1, 0).is_err());
        assert!(Ring::new(Mode::Hbar, 2, 2, 0).is_err());
        assert!(Ring::new(Mode::HbarAux, 2, 2, 1).is_err());
        assert!(Ring::new(Mode::LaurentAux, 2, 2, 3).is_ok());
        assert_eq!(Mode::parse("hbar-aux"), Some(Mode::HbarAux));
    }
}
