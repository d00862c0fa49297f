//! Exact arithmetic in the cyclotomic field Q(ρ_j), ρ_j = exp(2πi/j).
//!
//! Elements are residues of rational polynomials modulo Φ_j, so an element is
//! rational exactly when every positive-degree coefficient vanishes.

use std::fmt;

use num_traits::{One, Zero};

use super::{Int, Rat};
use crate::{Error, Result};

/// Φ_j with integer coefficients, constant term first, computed as
/// (x^j - 1) / Π_{d | j, d < j} Φ_d.
pub fn cyclotomic_poly(j: u64) -> Vec<i64> {
    assert!(j >= 1, "cyclotomic polynomial needs j >= 1");
    let mut num = vec![0i64; j as usize + 1];
    num[0] = -1;
    num[j as usize] = 1;
    for d in (1..j).filter(|d| j.is_multiple_of(*d)) {
        num = exact_div_monic(&num, &cyclotomic_poly(d));
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (t, &dc) in den.iter().enumerate() {
            rem[i + t] -= c * dc;
        }
    }
    assert!(
        rem.iter().all(|&c| c == 0),
        "cyclotomic division left a remainder"
    );
    quot
}

/// The field Q(ρ_j) with the reductions x^e mod Φ_j precomputed for 0 ≤ e < j.
#[derive(Debug, Clone)]
pub struct CycloField {
    order: u64,
    phi: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl CycloField {
    pub fn new(order: u64) -> Self {
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x, then reduce the x^deg term
            let top = cur[deg - 1];
            let mut next = vec![0i64; deg];
            next[1..deg].copy_from_slice(&cur[..deg - 1]);
            for (t, n) in next.iter_mut().enumerate() {
                *n -= top * phi[t];
            }
            cur = next;
        }
        Self { order, phi, powers }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// φ(j), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.phi
    }

    pub fn zero(&self) -> CycloElt {
        CycloElt {
            order: self.order,
            coeffs: vec![Rat::zero(); self.degree()],
        }
    }

    pub fn from_rational(&self, r: Rat) -> CycloElt {
        let mut z = self.zero();
        z.coeffs[0] = r;
        z
    }

    pub fn one(&self) -> CycloElt {
        self.from_rational(Rat::one())
    }

    /// ρ_j^e for any integer exponent.
    pub fn root_power(&self, e: i64) -> CycloElt {
        let mut z = self.zero();
        self.add_scaled_root_power(&mut z, e, &Rat::one());
        z
    }

    /// z += c · ρ_j^e.
    pub fn add_scaled_root_power(&self, z: &mut CycloElt, e: i64, c: &Rat) {
        self.check(z);
        if c.is_zero() {
            return;
        }
        let e = e.rem_euclid(self.order as i64) as usize;
        for (acc, &p) in z.coeffs.iter_mut().zip(&self.powers[e]) {
            if p != 0 {
                *acc += c * Rat::from_integer(Int::from(p));
            }
        }
    }

    pub fn add(&self, a: &CycloElt, b: &CycloElt) -> CycloElt {
        self.check(a);
        self.check(b);
        CycloElt {
            order: self.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn neg(&self, a: &CycloElt) -> CycloElt {
        self.check(a);
        CycloElt {
            order: self.order,
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn sub(&self, a: &CycloElt, b: &CycloElt) -> CycloElt {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &CycloElt, c: &Rat) -> CycloElt {
        self.check(a);
        CycloElt {
            order: self.order,
            coeffs: a.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, a: &CycloElt, b: &CycloElt) -> CycloElt {
        self.check(a);
        self.check(b);
        let mut z = self.zero();
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    self.add_scaled_root_power(&mut z, (i + t) as i64, &(x * y));
                }
            }
        }
        z
    }

    pub fn pow(&self, a: &CycloElt, e: u64) -> CycloElt {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    fn check(&self, z: &CycloElt) {
        assert_eq!(
            z.order, self.order,
            "mixing elements of different cyclotomic fields"
        );
    }
}

/// Element of Q(ρ_j), stored as the coefficients of its reduced
/// representative modulo Φ_j (length φ(j)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloElt {
    order: u64,
    coeffs: Vec<Rat>,
}

impl CycloElt {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, or [`Error::Irrational`].
    pub fn to_rational(&self) -> Result<Rat> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::Irrational { order: self.order })
        }
    }
}

impl fmt::Display for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ρ")?,
                _ => write!(f, "({c})ρ^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " [ρ = ρ_{}]", self.order)
    }
}

pub fn cyclo_root_power(j: u64, e: i64) -> CycloElt {
    CycloField::new(j).root_power(e)
}

pub fn cyclo_extract_rational(z: &CycloElt) -> Result<Rat> {
    z.to_rational()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_int;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(60).len() - 1, 16);
    }

    #[test]
    fn root_power_examples() {
        assert_eq!(cyclo_root_power(2, 1).to_rational(), Ok(rat_int(-1)));
        assert_eq!(cyclo_root_power(3, 3).to_rational(), Ok(rat_int(1)));
        let i = cyclo_root_power(4, 1);
        assert_eq!(i.coeffs(), &[rat_int(0), rat_int(1)]);
        assert_eq!(i.to_rational(), Err(Error::Irrational { order: 4 }));
        assert_eq!(cyclo_root_power(1, 5).to_rational(), Ok(rat_int(1)));
        assert_eq!(cyclo_root_power(4, -1), CycloField::new(4).root_power(3));
    }

    #[test]
    fn extraction_examples() {
        let f2 = CycloField::new(2);
        let r2 = f2.root_power(1);
        assert_eq!(cyclo_extract_rational(&f2.add(&r2, &r2)), Ok(rat_int(-2)));

        let f3 = CycloField::new(3);
        let s = f3.add(&f3.add(&f3.root_power(1), &f3.root_power(2)), &f3.one());
        assert_eq!(cyclo_extract_rational(&s), Ok(rat_int(0)));
    }

    #[test]
    fn roots_have_order_dividing_j() {
        for j in 1..=12u64 {
            let f = CycloField::new(j);
            for e in -3..(j as i64 + 3) {
                let z = f.root_power(e);
                assert_eq!(f.pow(&z, j), f.one(), "j={j} e={e}");
            }
        }
    }

    #[test]
    fn geometric_sum_vanishes() {
        for j in 2..=12u64 {
            let f = CycloField::new(j);
            let mut s = f.zero();
            for e in 0..j as i64 {
                f.add_scaled_root_power(&mut s, e, &Rat::one());
            }
            assert!(s.is_zero(), "j={j}");
        }
    }

    #[test]
    fn multiplication_is_exponent_addition() {
        let f = CycloField::new(12);
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(
                    f.mul(&f.root_power(a), &f.root_power(b)),
                    f.root_power(a + b)
                );
            }
        }
    }
}
