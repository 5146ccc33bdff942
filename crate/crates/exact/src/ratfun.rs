use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ExactError;
use crate::gcd::gcd_cofactors;
use crate::poly::{identity_image, Poly};
use crate::var::{Mon, Var, NVARS};

/// Rational function in the registry variables, kept in canonical form:
///
/// * the denominator is an ordinary polynomial with no monomial factor and a
///   positive leading coefficient;
/// * numerator and denominator have no common factor, integer content
///   included.
///
/// Structural equality is therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl RatFun {
    pub fn zero() -> RatFun {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFun {
        RatFun { num: Poly::one(), den: Poly::one() }
    }

    pub fn int(c: impl Into<BigInt>) -> RatFun {
        RatFun { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn rational(n: impl Into<BigInt>, d: impl Into<BigInt>) -> RatFun {
        let (n, d) = (n.into(), d.into());
        assert!(!d.is_zero(), "zero denominator");
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        RatFun { num: Poly::constant(n), den: Poly::constant(d) }
    }

    pub fn from_rational(r: &BigRational) -> RatFun {
        RatFun::rational(r.numer().clone(), r.denom().clone())
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn monomial(m: Mon) -> RatFun {
        RatFun { num: Poly::monomial(m, 1), den: Poly::one() }
    }

    pub fn var(v: Var) -> RatFun {
        RatFun::monomial(Mon::var(v))
    }

    /// `q = qh^2`.
    pub fn q() -> RatFun {
        RatFun::monomial(Mon::var_pow(Var::QH, 2))
    }

    /// `t = th^2`.
    pub fn t() -> RatFun {
        RatFun::monomial(Mon::var_pow(Var::TH, 2))
    }

    pub fn u() -> RatFun {
        RatFun::var(Var::U)
    }

    /// `q^a t^b` with half-integer exponents given doubled: `qh^a2 th^b2`.
    pub fn qt_half(a2: i32, b2: i32) -> RatFun {
        RatFun::monomial(Mon::from_pairs(&[(Var::QH, a2), (Var::TH, b2)]))
    }

    /// `q^a t^b`.
    pub fn qt(a: i32, b: i32) -> RatFun {
        RatFun::qt_half(2 * a, 2 * b)
    }

    /// Canonicalize `num / den`.
    pub fn from_polys(num: Poly, den: Poly) -> Result<RatFun, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let m = den.min_exps();
        let (num, den) = if m.is_one() { (num, den) } else { (num.mul_mon(&m.inv()), den.mul_mon(&m.inv())) };
        if den.is_one() {
            return Ok(RatFun { num, den });
        }
        let r = gcd_cofactors(&num, &den);
        let (mut n, mut d) = (r.ca, r.cb);
        let dm = d.min_exps();
        if !dm.is_one() {
            n = n.mul_mon(&dm.inv());
            d = d.mul_mon(&dm.inv());
        }
        if d.lead_is_negative() {
            n = -n;
            d = -d;
        }
        Ok(RatFun { num: n, den: d })
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// `Some(c)` for a rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        Some(BigRational::new(self.num.as_constant()?, self.den.as_constant()?))
    }

    pub fn support(&self) -> u16 {
        self.num.support() | self.den.support()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.support() & (1 << v.index()) != 0
    }

    pub fn inv(&self) -> Result<RatFun, ExactError> {
        if self.num.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let m = self.num.min_exps();
        let mut n = self.den.mul_mon(&m.inv());
        let mut d = self.num.mul_mon(&m.inv());
        if d.lead_is_negative() {
            n = -n;
            d = -d;
        }
        Ok(RatFun { num: n, den: d })
    }

    pub fn checked_div(&self, o: &RatFun) -> Result<RatFun, ExactError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<RatFun, ExactError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs();
        // a canonical fraction stays canonical under powers
        Ok(RatFun { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn scale_int(&self, c: &BigInt) -> RatFun {
        self * &RatFun::int(c.clone())
    }

    /// Substitute each variable by a Laurent monomial (e.g. `u -> x*y`,
    /// `qh -> th`).
    pub fn substitute_mon(&self, subs: &[(Var, Mon)]) -> Result<RatFun, ExactError> {
        let mut image = identity_image();
        for (v, m) in subs {
            image[v.index()] = *m;
        }
        RatFun::from_polys(self.num.substitute_mon(&image), self.den.substitute_mon(&image))
    }

    /// Substitute variables by arbitrary rational functions. Fails when the
    /// image of the denominator vanishes.
    pub fn substitute(&self, subs: &[(Var, RatFun)]) -> Result<RatFun, ExactError> {
        let mut image: [Option<&RatFun>; NVARS] = [None; NVARS];
        for (v, r) in subs {
            image[v.index()] = Some(r);
        }
        let n = eval_poly(&self.num, &image)?;
        let d = eval_poly(&self.den, &image)?;
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        n.checked_div(&d)
    }

    /// Evaluate at integer values for the listed variables; `None` on a pole
    /// or if a variable is left unassigned.
    pub fn eval_at(&self, point: &dyn Fn(Var) -> Option<i64>) -> Option<BigRational> {
        let n = self.num.eval_at(point)?;
        let d = self.den.eval_at(point)?;
        if d.is_zero() {
            return None;
        }
        Some(n / d)
    }

    /// Rename variables by a permutation of the registry.
    pub fn rename(&self, map: &[(Var, Var)]) -> RatFun {
        let mut image = identity_image();
        for (a, b) in map {
            image[a.index()] = Mon::var(*b);
        }
        let num = self.num.substitute_mon(&image);
        let den = self.den.substitute_mon(&image);
        // renaming preserves coprimality; only signs/order can change
        let mut r = RatFun { num, den };
        if r.den.lead_is_negative() {
            r.num = -r.num;
            r.den = -r.den;
        }
        r
    }

    fn add_impl(&self, o: &RatFun, negate: bool) -> RatFun {
        let c = if negate { -o.num.clone() } else { o.num.clone() };
        if self.is_zero() {
            return RatFun { num: c, den: o.den.clone() };
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = &self.num + &c;
            if self.den.is_one() {
                return RatFun { num: n, den: Poly::one() };
            }
            return RatFun::from_polys(n, self.den.clone()).unwrap();
        }
        if self.den.is_one() {
            return RatFun { num: &(&self.num * &o.den) + &c, den: o.den.clone() };
        }
        if o.den.is_one() {
            return RatFun { num: &self.num + &(&c * &self.den), den: self.den.clone() };
        }
        // Henrici: a/b + c/d with g = gcd(b, d)
        let r = gcd_cofactors(&self.den, &o.den);
        let (g, b1, d1) = (r.g, r.ca, r.cb);
        let n = &(&self.num * &d1) + &(&c * &b1);
        if n.is_zero() {
            return RatFun::zero();
        }
        let bd = &b1 * &d1;
        if g.is_one() {
            return RatFun { num: n, den: bd };
        }
        let h = gcd_cofactors(&n, &g);
        let mut num = h.ca;
        let mut den = &bd * &h.cb;
        let m = den.min_exps();
        if !m.is_one() {
            num = num.mul_mon(&m.inv());
            den = den.mul_mon(&m.inv());
        }
        if den.lead_is_negative() {
            num = -num;
            den = -den;
        }
        RatFun { num, den }
    }

    fn mul_impl(&self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFun { num: &self.num * &o.num, den: Poly::one() };
        }
        let (a, d) = cancel(&self.num, &o.den);
        let (c, b) = cancel(&o.num, &self.den);
        let mut num = &a * &c;
        let mut den = &b * &d;
        let m = den.min_exps();
        if !m.is_one() {
            num = num.mul_mon(&m.inv());
            den = den.mul_mon(&m.inv());
        }
        if den.lead_is_negative() {
            num = -num;
            den = -den;
        }
        RatFun { num, den }
    }
}

/// Remove the common factor of a numerator and a denominator.
fn cancel(n: &Poly, d: &Poly) -> (Poly, Poly) {
    if d.is_one() {
        return (n.clone(), d.clone());
    }
    if n.is_monomial() && n.terms()[0].1.is_one() {
        return (n.clone(), d.clone());
    }
    let r = gcd_cofactors(n, d);
    if r.g.is_one() {
        (n.clone(), d.clone())
    } else {
        (r.ca, r.cb)
    }
}

fn eval_poly(p: &Poly, image: &[Option<&RatFun>; NVARS]) -> Result<RatFun, ExactError> {
    let mut acc = RatFun::zero();
    for (m, c) in p.terms() {
        let mut fixed = Mon::ONE;
        let mut term = RatFun::int(c.clone());
        for v in Var::all() {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            match image[v.index()] {
                Some(r) => term = &term * &r.pow(e)?,
                None => fixed.set_exp(v, e),
            }
        }
        acc += &(&term * &RatFun::monomial(fixed));
    }
    Ok(acc)
}

impl fmt::Display for RatFun {
    /// `num` when the denominator is 1, otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for RatFun {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<RatFun, ExactError> {
        crate::parse::parse(s)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        self.add_impl(o, false)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self.add_impl(o, true)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        self.mul_impl(o)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    /// Panics on division by zero; see [`RatFun::checked_div`].
    fn div(self, o: &RatFun) -> RatFun {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -self.num, den: self.den }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $f(self, o: RatFun) -> RatFun {
                (&self).$f(&o)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $f(self, o: &RatFun) -> RatFun {
                (&self).$f(o)
            }
        }
        impl $tr<RatFun> for &RatFun {
            type Output = RatFun;
            fn $f(self, o: RatFun) -> RatFun {
                self.$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&RatFun> for RatFun {
    fn add_assign(&mut self, o: &RatFun) {
        *self = &*self + o;
    }
}

impl SubAssign<&RatFun> for RatFun {
    fn sub_assign(&mut self, o: &RatFun) {
        *self = &*self - o;
    }
}

impl MulAssign<&RatFun> for RatFun {
    fn mul_assign(&mut self, o: &RatFun) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for RatFun {
    fn sum<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for RatFun {
    fn product<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::one(), |a, b| a * b)
    }
}

impl From<i64> for RatFun {
    fn from(c: i64) -> RatFun {
        RatFun::int(c)
    }
}
