use std::fmt;

use crate::error::ExactError;
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::var::{Mon, Var};

/// Which expansion variable a [`USeries`] uses.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Direction {
    /// Powers of `u^-1` (expansion at `u = infinity`).
    InvU,
    /// Powers of `u` (expansion at `u = 0`).
    U,
}

/// Truncated Laurent series `sum_{r >= start} c_r w^r`, `w = u^-1` or `u`,
/// known exactly through `w^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct USeries {
    pub dir: Direction,
    pub start: i32,
    pub order: i32,
    coeffs: Vec<RatFun>,
}

impl USeries {
    pub fn zero(dir: Direction, order: i32) -> USeries {
        USeries { dir, start: 0, order, coeffs: Vec::new() }
    }

    pub fn one(dir: Direction, order: i32) -> USeries {
        USeries::from_coeffs(dir, 0, order, vec![RatFun::one()])
    }

    pub fn constant(dir: Direction, order: i32, c: RatFun) -> USeries {
        USeries::from_coeffs(dir, 0, order, vec![c])
    }

    /// Coefficients of `w^start, w^(start+1), ...`; anything past `order` is dropped.
    pub fn from_coeffs(dir: Direction, start: i32, order: i32, mut coeffs: Vec<RatFun>) -> USeries {
        let keep = (order - start + 1).max(0) as usize;
        coeffs.truncate(keep);
        let mut s = USeries { dir, start, order, coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.start = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.start += lead as i32;
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `w^r`; panics past the truncation order.
    pub fn coeff(&self, r: i32) -> RatFun {
        assert!(r <= self.order, "coefficient w^{r} beyond order {}", self.order);
        if r < self.start || r >= self.start + self.coeffs.len() as i32 {
            RatFun::zero()
        } else {
            self.coeffs[(r - self.start) as usize].clone()
        }
    }

    /// Lowest power present (for the zero series, `order + 1`).
    pub fn valuation(&self) -> i32 {
        if self.is_zero() {
            self.order + 1
        } else {
            self.start
        }
    }

    pub fn truncate(&self, order: i32) -> USeries {
        let order = order.min(self.order);
        USeries::from_coeffs(self.dir, self.start, order, self.coeffs.clone())
    }

    fn dense(&self, from: i32, to: i32) -> Vec<RatFun> {
        (from..=to).map(|r| self.coeff(r)).collect()
    }

    pub fn add(&self, o: &USeries) -> USeries {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &USeries) -> USeries {
        self.combine(o, true)
    }

    fn combine(&self, o: &USeries, negate: bool) -> USeries {
        assert_eq!(self.dir, o.dir);
        let order = self.order.min(o.order);
        let start = self.valuation().min(o.valuation()).min(order + 1);
        let c = (start..=order)
            .map(|r| {
                let b = o.coeff(r);
                if negate {
                    &self.coeff(r) - &b
                } else {
                    &self.coeff(r) + &b
                }
            })
            .collect();
        USeries::from_coeffs(self.dir, start, order, c)
    }

    pub fn scale(&self, c: &RatFun) -> USeries {
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        USeries::from_coeffs(self.dir, self.start, self.order, coeffs)
    }

    pub fn mul(&self, o: &USeries) -> USeries {
        assert_eq!(self.dir, o.dir);
        if self.is_zero() || o.is_zero() {
            let order = (self.order + o.valuation()).min(o.order + self.valuation());
            return USeries::zero(self.dir, order);
        }
        // relative precision of each factor bounds the product's precision
        let order = (self.order + o.start).min(o.order + self.start);
        let start = self.start + o.start;
        let n = (order - start + 1).max(0) as usize;
        let mut c = vec![RatFun::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < n {
                    c[i + j] += &(a * b);
                }
            }
        }
        USeries::from_coeffs(self.dir, start, order, c)
    }

    /// Multiplicative inverse; the leading coefficient must be invertible.
    pub fn inv(&self) -> Result<USeries, ExactError> {
        if self.is_zero() {
            return Err(ExactError::Series("inverse of zero series".into()));
        }
        let a0inv = self.coeffs[0].inv()?;
        let rel = self.order - self.start;
        let mut b: Vec<RatFun> = vec![a0inv.clone()];
        for n in 1..=rel.max(0) as usize {
            let mut s = RatFun::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                s += &(&self.coeffs[k] * &b[n - k]);
            }
            b.push(-(&s * &a0inv));
        }
        Ok(USeries::from_coeffs(self.dir, -self.start, rel - self.start, b))
    }

    /// `exp(f)` for `f` with no constant or negative-power terms.
    pub fn exp(&self) -> Result<USeries, ExactError> {
        if self.valuation() < 1 {
            return Err(ExactError::Series("exp needs a series with positive valuation".into()));
        }
        let order = self.order;
        let g = self.dense(0, order.max(0));
        let mut e: Vec<RatFun> = vec![RatFun::one()];
        for n in 1..=order.max(0) as usize {
            let mut s = RatFun::zero();
            for k in 1..=n {
                if !g[k].is_zero() {
                    s += &(&g[k].scale_int(&(k as i64).into()) * &e[n - k]);
                }
            }
            e.push(&s * &RatFun::rational(1, n as i64));
        }
        Ok(USeries::from_coeffs(self.dir, 0, order, e))
    }

    /// `log(f)` for `f` with constant term 1.
    pub fn log(&self) -> Result<USeries, ExactError> {
        if self.valuation() != 0 || !self.coeff(0).is_one() {
            return Err(ExactError::Series("log needs constant term 1".into()));
        }
        let order = self.order;
        let f = self.dense(0, order.max(0));
        // n l_n = n f_n - sum_{k=1}^{n-1} k l_k f_{n-k}
        let mut l: Vec<RatFun> = vec![RatFun::zero()];
        for n in 1..=order.max(0) as usize {
            let mut s = f[n].scale_int(&(n as i64).into());
            for k in 1..n {
                s -= &(&l[k].scale_int(&(k as i64).into()) * &f[n - k]);
            }
            l.push(&s * &RatFun::rational(1, n as i64));
        }
        Ok(USeries::from_coeffs(self.dir, 0, order, l))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i32, &RatFun)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.start + i as i32, c))
    }

    /// Substitute the coefficients (e.g. `qh -> th`).
    pub fn map_coeffs(&self, f: impl Fn(&RatFun) -> RatFun) -> USeries {
        let c = self.coeffs.iter().map(f).collect();
        USeries::from_coeffs(self.dir, self.start, self.order, c)
    }

    /// Sum the truncated series back into a rational function of `u`.
    pub fn to_ratfun(&self) -> RatFun {
        let w = match self.dir {
            Direction::InvU => -1,
            Direction::U => 1,
        };
        self.coeffs()
            .map(|(r, c)| c * &RatFun::monomial(Mon::var_pow(Var::U, w * r)))
            .sum()
    }
}

/// Expansion of `f` in powers of `u^-1` through `u^-order`.
pub fn rf_series(f: &RatFun, order: i32) -> Result<USeries, ExactError> {
    expand(f, Var::U, Direction::InvU, order)
}

/// Expansion of `f` in powers of `u` through `u^order`.
pub fn rf_series_at_zero(f: &RatFun, order: i32) -> Result<USeries, ExactError> {
    expand(f, Var::U, Direction::U, order)
}

fn expand(f: &RatFun, v: Var, dir: Direction, order: i32) -> Result<USeries, ExactError> {
    let sign = if dir == Direction::InvU { -1 } else { 1 };
    // rewrite num and den as series in w = v^sign
    let as_w = |p: &Poly| -> (i32, Vec<RatFun>) {
        let groups = p.coeffs_in(v);
        let exps: Vec<i32> = groups.keys().map(|e| e * sign).collect();
        let lo = *exps.iter().min().unwrap_or(&0);
        let hi = *exps.iter().max().unwrap_or(&0);
        let mut c = vec![RatFun::zero(); (hi - lo + 1) as usize];
        for (e, cp) in groups {
            c[(e * sign - lo) as usize] = RatFun::from_poly(cp);
        }
        (lo, c)
    };
    let (ns, nc) = as_w(f.numer());
    let (ds, dc) = as_w(f.denom());
    let rel = order - (ns - ds);
    let num = USeries::from_coeffs(dir, 0, rel.max(0), nc);
    let den = USeries::from_coeffs(dir, 0, rel.max(0), dc);
    let q = num.mul(&den.inv()?);
    let c: Vec<RatFun> = (0..=rel.max(0)).map(|r| q.coeff(r)).collect();
    let c = if rel < 0 { Vec::new() } else { c };
    Ok(USeries::from_coeffs(dir, ns - ds, order, c))
}

impl fmt::Display for USeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match self.dir {
            Direction::InvU => "u^-",
            Direction::U => "u^",
        };
        let mut first = true;
        for (r, c) in self.coeffs() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "[{c}]*{w}{r}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({w}{})", self.order + 1)
    }
}

impl fmt::Debug for USeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
