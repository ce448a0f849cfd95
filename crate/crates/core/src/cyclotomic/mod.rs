//! Exact elements of cyclotomic fields `Q(zeta_m)`.
//!
//! An element is stored against a declared conductor `m` in the power basis
//! `1, zeta, .., zeta^(phi(m)-1)` of `Q[x] / Phi_m(x)`, which makes the sparse
//! coefficient list canonical. The conductor is never shrunk; operands with
//! different conductors are lifted to the lcm.

pub mod ring;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory;
pub use ring::{ring, CycloRing};

pub type Rational = BigRational;

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    // ascending exponents, no zero coefficients
    coeffs: Vec<(u32, Rational)>,
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `zeta_m^k` in canonical form.
pub fn root_of_unity(m: u32, k: i64) -> Cyclotomic {
    let r = ring(m);
    let k = k.rem_euclid(m as i64) as u64;
    Cyclotomic::from_dense_int(m, &r.root(k))
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Cyclotomic::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_rational(r: Rational) -> Self {
        let coeffs = if r.is_zero() { Vec::new() } else { vec![(0, r)] };
        Cyclotomic {
            conductor: 1,
            coeffs,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Nonzero power-basis coefficients, ascending by exponent.
    pub fn coeffs(&self) -> &[(u32, Rational)] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn from_dense_int(m: u32, dense: &[i64]) -> Self {
        let coeffs = dense
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k as u32, Rational::from_integer(c.into())))
            .collect();
        Cyclotomic {
            conductor: m,
            coeffs,
        }
    }

    fn from_dense(m: u32, dense: Vec<Rational>) -> Self {
        let coeffs = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u32, c))
            .collect();
        Cyclotomic {
            conductor: m,
            coeffs,
        }
    }

    /// Dense coordinates over conductor `target`, which must be a multiple of ours.
    pub fn dense_in(&self, target: u32) -> Vec<Rational> {
        assert!(
            target % self.conductor == 0,
            "conductor {} does not divide {target}",
            self.conductor
        );
        let r = ring(target);
        let step = (target / self.conductor) as usize;
        let mut out = vec![Rational::zero(); r.dim];
        for (e, c) in &self.coeffs {
            let basis = &r.zeta_pow[*e as usize * step];
            for (o, &b) in out.iter_mut().zip(basis) {
                if b != 0 {
                    *o += c * Rational::from_integer(b.into());
                }
            }
        }
        out
    }

    /// Rewrites the value over a larger conductor.
    pub fn lift(&self, target: u32) -> Cyclotomic {
        if target == self.conductor {
            return self.clone();
        }
        Cyclotomic::from_dense(target, self.dense_in(target))
    }

    /// Integral coordinates over `target`, or `None` if a coefficient is not an integer.
    pub fn to_dense_int(&self, target: u32) -> Option<Vec<i64>> {
        self.dense_in(target)
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn conjugate(&self) -> Cyclotomic {
        let m = self.conductor;
        let r = ring(m);
        let mut out = vec![Rational::zero(); r.dim];
        for (e, c) in &self.coeffs {
            let basis = &r.zeta_pow[((m - e) % m) as usize];
            for (o, &b) in out.iter_mut().zip(basis) {
                if b != 0 {
                    *o += c * Rational::from_integer(b.into());
                }
            }
        }
        Cyclotomic::from_dense(m, out)
    }

    pub fn as_rational(&self) -> Result<Rational> {
        match self.coeffs.as_slice() {
            [] => Ok(Rational::zero()),
            [(0, c)] => Ok(c.clone()),
            _ => Err(Error::NotRational),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_ok()
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    /// `|x|^2 = x * conj(x)`.
    pub fn norm_squared(&self) -> Cyclotomic {
        self * &self.conjugate()
    }

    /// Total order on values of the same conductor: lexicographic on the
    /// `(exponent, coefficient)` list. Mixed conductors compare after lifting.
    pub fn canonical_cmp(&self, other: &Cyclotomic) -> Ordering {
        if self.conductor == other.conductor {
            self.coeffs.cmp(&other.coeffs)
        } else {
            let l = numtheory::lcm(self.conductor, other.conductor);
            self.lift(l).coeffs.cmp(&other.lift(l).coeffs)
        }
    }

    /// Floating approximation, for display only.
    pub fn approx(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let m = self.conductor as f64;
        self.coeffs.iter().fold((0.0, 0.0), |(re, im), (e, c)| {
            let t = std::f64::consts::TAU * *e as f64 / m;
            let c = c.to_f64().unwrap_or(f64::NAN);
            (re + c * t.cos(), im + c * t.sin())
        })
    }

    pub fn to_doc(&self) -> CyclotomicDoc {
        CyclotomicDoc {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (*e, format!("{}/{}", c.numer(), c.denom())))
                .collect(),
        }
    }

    pub fn from_doc(doc: &CyclotomicDoc) -> Result<Self> {
        let bad = |message: String| Error::Parse {
            position: 0,
            message,
        };
        if doc.conductor == 0 {
            return Err(bad("conductor must be positive".into()));
        }
        let dim = ring(doc.conductor).dim as u32;
        let mut dense = vec![Rational::zero(); dim as usize];
        for (e, text) in &doc.coeffs {
            if *e >= dim {
                return Err(bad(format!("exponent {e} outside the power basis")));
            }
            let (n, d) = text.split_once('/').unwrap_or((text.as_str(), "1"));
            let n: BigInt = n.trim().parse().map_err(|_| bad(format!("bad rational {text:?}")))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad(format!("bad rational {text:?}")))?;
            if d.is_zero() {
                return Err(bad(format!("zero denominator in {text:?}")));
            }
            dense[*e as usize] += Rational::new(n, d);
        }
        Ok(Cyclotomic::from_dense(doc.conductor, dense))
    }
}

/// Serialized form: `{conductor, coeffs: [[exponent, "num/den"], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicDoc {
    pub conductor: u32,
    pub coeffs: Vec<(u32, String)>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = CyclotomicDoc::deserialize(d)?;
        Cyclotomic::from_doc(&doc).map_err(serde::de::Error::custom)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let l = numtheory::lcm(self.conductor, other.conductor);
        self.dense_in(l) == other.dense_in(l)
    }
}

impl Eq for Cyclotomic {}

fn binary_dense(a: &Cyclotomic, b: &Cyclotomic) -> (u32, Vec<Rational>, Vec<Rational>) {
    let l = numtheory::lcm(a.conductor, b.conductor);
    (l, a.dense_in(l), b.dense_in(l))
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, other: &Cyclotomic) -> Cyclotomic {
        let (l, mut x, y) = binary_dense(self, other);
        for (a, b) in x.iter_mut().zip(y) {
            *a += b;
        }
        Cyclotomic::from_dense(l, x)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, other: &Cyclotomic) -> Cyclotomic {
        self + &(-other)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero();
        }
        let l = numtheory::lcm(self.conductor, other.conductor);
        let r = ring(l);
        let (x, y) = (self.dense_in(l), other.dense_in(l));
        let mut prod = vec![Rational::zero(); 2 * r.dim - 1];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        for k in (r.dim..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if !c.is_zero() {
                for (j, &pj) in r.poly[..r.dim].iter().enumerate() {
                    if pj != 0 {
                        prod[k - r.dim + j] -= &c * Rational::from_integer(pj.into());
                    }
                }
            }
        }
        prod.truncate(r.dim);
        Cyclotomic::from_dense(l, prod)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, other: Cyclotomic) -> Cyclotomic {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if *e == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "z{}", self.conductor)?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(m: u32, k: i64) -> Cyclotomic {
        root_of_unity(m, k)
    }

    #[test]
    fn basic_roots() {
        assert_eq!(z(1, 0), Cyclotomic::one());
        assert_eq!(z(4, 2), Cyclotomic::from_int(-1));
        assert_eq!(&z(3, 1) + &z(3, 2), Cyclotomic::from_int(-1));
        assert_eq!(&z(3, 1) * &z(3, 2), Cyclotomic::one());
        let s = (0..5).fold(Cyclotomic::zero(), |acc, k| &acc + &z(5, k));
        assert!(s.is_zero());
    }

    #[test]
    fn conjugation() {
        let r = Cyclotomic::from_rational(rational(3, 7));
        assert_eq!(r.conjugate(), r);
        assert_eq!(z(5, 1).conjugate(), z(5, 4));
        let real = &z(9, 1) + &z(9, 8);
        assert_eq!(real.conjugate(), real);
        assert_eq!(real.conjugate().conjugate(), real);
    }

    #[test]
    fn rationality() {
        assert_eq!(
            Cyclotomic::from_int(3).lift(6).as_rational().unwrap(),
            rational(3, 1)
        );
        assert_eq!(z(3, 1).as_rational(), Err(Error::NotRational));
        let sqrt2 = &z(8, 1) + &z(8, 7);
        assert_eq!(sqrt2.as_rational(), Err(Error::NotRational));
        assert_eq!(
            (&sqrt2 * &sqrt2).as_rational().unwrap(),
            rational(2, 1)
        );
    }

    #[test]
    fn mixed_conductors_compare_after_lifting() {
        assert_eq!(z(3, 1), z(9, 3));
        assert_eq!(z(3, 1), z(6, 2));
        assert_ne!(z(3, 1), z(6, 1));
        assert_eq!(&z(4, 1) * &z(3, 1), z(12, 7));
    }

    #[test]
    fn doc_roundtrip() {
        let x = &z(9, 4).scale(&rational(-5, 3)) + &Cyclotomic::from_rational(rational(1, 2));
        let json = serde_json::to_string(&x).unwrap();
        assert!(json.contains("\"-5/3\"") || json.contains("\"5/3\""));
        let back: Cyclotomic = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.conductor(), 9);
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::zero().to_string(), "0");
        assert_eq!(z(3, 2).to_string(), "-1 - z3");
        assert_eq!(z(5, 2).to_string(), "z5^2");
    }

    fn element(m: u32) -> impl Strategy<Value = Cyclotomic> {
        let dim = ring(m).dim;
        prop::collection::vec((-6i64..=6, 1i64..=4), dim).prop_map(move |cs| {
            cs.into_iter().enumerate().fold(Cyclotomic::zero(), |acc, (k, (n, d))| {
                &acc + &z(m, k as i64).scale(&rational(n, d))
            })
        })
    }

    fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
        prop_oneof![Just(6u32), Just(9), Just(12), Just(45), Just(25)]
            .prop_flat_map(|m| (element(m), element(m), element(m)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn field_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a + &(-&a)).is_zero());
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            // equality agrees with subtraction to zero
            prop_assert_eq!(a == b, (&a - &b).is_zero());
        }

        #[test]
        fn norm_is_real(k in 0i64..45, n in -3i64..=3) {
            let x = &z(45, k).scale(&rational(n, 1)) + &Cyclotomic::one();
            let nrm = x.norm_squared();
            prop_assert_eq!(nrm.conjugate(), nrm);
        }
    }
}
