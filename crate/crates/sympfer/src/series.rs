//! Truncated bivariate power series over the rationals and the coefficient
//! table c_mn of the twisted-operator correction, defined by
//! sum c_mn x^m y^n = -log(((1+x)^(1/2) + (1+y)^(1/2))/2).

use crate::rat::{binom_rat, rat, rat_int, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Bivariate series truncated to total order <= `order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesQ2 {
    pub order: u32,
    terms: BTreeMap<(u32, u32), Rat>,
}

impl SeriesQ2 {
    pub fn zero(order: u32) -> Self {
        SeriesQ2 {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(order: u32, r: Rat) -> Self {
        let mut s = Self::zero(order);
        s.set(0, 0, r);
        s
    }

    pub fn set(&mut self, m: u32, n: u32, r: Rat) {
        if m + n > self.order {
            return;
        }
        if r.is_zero() {
            self.terms.remove(&(m, n));
        } else {
            self.terms.insert((m, n), r);
        }
    }

    pub fn get(&self, m: u32, n: u32) -> Rat {
        self.terms.get(&(m, n)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, rhs: &SeriesQ2) -> SeriesQ2 {
        let order = self.order.min(rhs.order);
        let mut out = SeriesQ2::zero(order);
        for (&(m, n), c) in self.terms.iter().chain(rhs.terms.iter()) {
            if m + n <= order {
                let cur = out.get(m, n);
                out.set(m, n, cur + c);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> SeriesQ2 {
        let mut out = SeriesQ2::zero(self.order);
        for (&(m, n), c) in &self.terms {
            out.set(m, n, c * r);
        }
        out
    }

    pub fn mul(&self, rhs: &SeriesQ2) -> SeriesQ2 {
        let order = self.order.min(rhs.order);
        let mut out = SeriesQ2::zero(order);
        for (&(m1, n1), c1) in &self.terms {
            for (&(m2, n2), c2) in &rhs.terms {
                let (m, n) = (m1 + m2, n1 + n2);
                if m + n <= order {
                    let cur = out.get(m, n);
                    out.set(m, n, cur + c1 * c2);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &Rat)> {
        self.terms.iter().map(|(&(m, n), c)| (m, n, c))
    }
}

/// Binomial series for (1+t)^(1/2) in one of the two variables.
fn sqrt_one_plus(order: u32, in_x: bool) -> SeriesQ2 {
    let mut s = SeriesQ2::zero(order);
    for k in 0..=order {
        let coef = binom_rat(&rat(1, 2), k as u64);
        if in_x {
            s.set(k, 0, coef);
        } else {
            s.set(0, k, coef);
        }
    }
    s
}

/// log(1+u) for a series u with zero constant term.
fn log_one_plus(u: &SeriesQ2) -> SeriesQ2 {
    assert!(u.get(0, 0).is_zero());
    let order = u.order;
    let mut acc = SeriesQ2::zero(order);
    let mut pow = SeriesQ2::constant(order, Rat::one());
    for k in 1..=order {
        pow = pow.mul(u);
        if pow.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&pow.scale(&rat(sign, k as i64)));
    }
    acc
}

/// exp(u) for a series u with zero constant term. Test oracle companion to
/// `log_one_plus`; also used by the series self-checks.
pub fn exp_series(u: &SeriesQ2) -> SeriesQ2 {
    assert!(u.get(0, 0).is_zero());
    let order = u.order;
    let mut acc = SeriesQ2::constant(order, Rat::one());
    let mut pow = SeriesQ2::constant(order, Rat::one());
    let mut fact = Rat::one();
    for k in 1..=order {
        pow = pow.mul(u);
        if pow.is_zero() {
            break;
        }
        fact *= rat_int(k as i64);
        acc = acc.add(&pow.scale(&(Rat::one() / fact.clone())));
    }
    acc
}

/// The c_mn table to total order `order`.
///
/// The square roots are expanded one order beyond the target before the log
/// composition so the argument of the log is known to full target order.
pub fn delta_coeffs(order: u32) -> SeriesQ2 {
    let inner = order + 1;
    let sx = sqrt_one_plus(inner, true);
    let sy = sqrt_one_plus(inner, false);
    let avg = sx.add(&sy).scale(&rat(1, 2));
    let mut u = avg;
    u.set(0, 0, Rat::zero()); // constant term is exactly 1
    let mut c = log_one_plus(&u).scale(&rat_int(-1));
    c.order = order;
    let keys: Vec<_> = c.terms.keys().cloned().collect();
    for (m, n) in keys {
        if m + n > order {
            c.terms.remove(&(m, n));
        }
    }
    c
}

/// The generating-function argument (sqrt(1+x)+sqrt(1+y))/2 to the given
/// order; exposed for the defining-equation check exp(-C) = this.
pub fn sqrt_average(order: u32) -> SeriesQ2 {
    let sx = sqrt_one_plus(order, true);
    let sy = sqrt_one_plus(order, false);
    sx.add(&sy).scale(&rat(1, 2))
}
