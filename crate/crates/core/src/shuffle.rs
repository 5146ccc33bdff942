//! Symmetric rational functions in `z_1..z_n` under the `zeta`-twisted
//! shuffle product.

use rayon::prelude::*;
use toroidal_exact::{Mon, Poly, RatFun, Var};

use crate::error::{CoreError, Result};
use crate::rmatrix::alpha;

pub const DEFAULT_MAX_VARS: usize = 6;

fn z(i: usize) -> Var {
    Var::z(i)
}

fn zp(i: usize) -> Poly {
    Poly::var(z(i))
}

/// `q^a t^b` as a polynomial coefficient.
fn qt_mon(a: i32, b: i32) -> Mon {
    Mon::from_pairs(&[(Var::QH, 2 * a), (Var::TH, 2 * b)])
}

fn qt_poly(a: i32, b: i32) -> Poly {
    Poly::monomial(qt_mon(a, b), 1)
}

/// `(x - 1)(x - q t^-1) / ((x - q)(x - t^-1))`.
pub fn zeta(x: &RatFun) -> Result<RatFun> {
    let one = RatFun::one();
    let num = &(x - &one) * &(x - &RatFun::qt(1, -1));
    let den = &(x - &RatFun::q()) * &(x - &RatFun::qt(0, -1));
    Ok(num.checked_div(&den)?)
}

#[derive(Clone, Debug)]
pub enum Kind {
    /// `scalar * f * prod_{i != j} (1 - z_i/z_j) / ((1 - q z_i/z_j)(1 - z_i/(t z_j)))`
    /// with `f` a symmetric Laurent polynomial and `scalar` free of `z`.
    Wheel { scalar: RatFun, f: Poly },
    Raw(RatFun),
}

#[derive(Clone, Debug)]
pub struct ShuffleElement {
    pub nvars: usize,
    pub kind: Kind,
}

/// `prod_{i != j} (1 - z_i/z_j) / ((1 - q z_i/z_j)(1 - z_i/(t z_j)))` on `vars`.
pub fn wheel_factor(vars: &[usize]) -> RatFun {
    let one = RatFun::one();
    let mut r = RatFun::one();
    for &i in vars {
        for &j in vars {
            if i == j {
                continue;
            }
            let x = RatFun::monomial(Mon::from_pairs(&[(z(i), 1), (z(j), -1)]));
            let num = &one - &x;
            let den = &(&one - &(&x * &RatFun::q())) * &(&one - &(&x * &RatFun::qt(0, -1)));
            r = &r * &(&num / &den);
        }
    }
    r
}

fn vandermonde(vars: &[usize]) -> Poly {
    let mut v = Poly::one();
    for (k, &i) in vars.iter().enumerate() {
        for &j in &vars[k + 1..] {
            v = &v * &(&zp(i) - &zp(j));
        }
    }
    v
}

/// Rename `z_1..z_k` to `z_{targets[0]}..z_{targets[k-1]}`.
fn place(f: &Poly, targets: &[usize]) -> Poly {
    let subs: Vec<(Var, Mon)> = targets.iter().enumerate().map(|(k, &t)| (z(k + 1), Mon::var(z(t)))).collect();
    f.substitute_vars(&subs)
}

fn place_rf(f: &RatFun, targets: &[usize]) -> RatFun {
    let subs: Vec<(Var, Mon)> = targets.iter().enumerate().map(|(k, &t)| (z(k + 1), Mon::var(z(t)))).collect();
    f.substitute_mon(&subs).expect("renaming variables keeps the denominator nonzero")
}

/// Subsets `A` of `{1..n}` of size `k`, with complements.
fn cosets(n: usize, k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| {
            let (a, b): (Vec<usize>, Vec<usize>) = (1..=n).partition(|&i| m & (1 << (i - 1)) != 0);
            (a, b)
        })
        .collect()
}

impl ShuffleElement {
    pub fn one() -> ShuffleElement {
        ShuffleElement { nvars: 0, kind: Kind::Wheel { scalar: RatFun::one(), f: Poly::one() } }
    }

    pub fn wheel(nvars: usize, scalar: RatFun, f: Poly) -> ShuffleElement {
        ShuffleElement { nvars, kind: Kind::Wheel { scalar, f } }
    }

    pub fn raw(nvars: usize, f: RatFun) -> ShuffleElement {
        ShuffleElement { nvars, kind: Kind::Raw(f) }
    }

    fn vars(&self) -> Vec<usize> {
        (1..=self.nvars).collect()
    }

    /// The element as one rational function in `z_1..z_n`.
    pub fn to_ratfun(&self) -> RatFun {
        match &self.kind {
            Kind::Raw(f) => f.clone(),
            Kind::Wheel { scalar, f } => &(scalar * &RatFun::from_poly(f.clone())) * &wheel_factor(&self.vars()),
        }
    }

    /// Rewrite in wheel form; fails if the quotient by the wheel factor is
    /// not a Laurent polynomial in `z`.
    pub fn to_wheel(&self) -> Result<ShuffleElement> {
        match &self.kind {
            Kind::Wheel { .. } => Ok(self.clone()),
            Kind::Raw(f) => {
                let h = f / &wheel_factor(&self.vars());
                let den = h.denom();
                if (1..=Var::MAX_Z).any(|i| den.involves(z(i))) {
                    return Err(CoreError::NotWheelForm(format!("denominator {den} depends on z")));
                }
                let scalar = RatFun::from_poly(den.clone()).inv()?;
                Ok(ShuffleElement::wheel(self.nvars, scalar, h.numer().clone()))
            }
        }
    }

    /// Swapping `z_i` and `z_{i+1}` leaves the element unchanged for every `i`.
    pub fn is_symmetric(&self) -> bool {
        let f = self.to_ratfun();
        (1..self.nvars).all(|i| f.rename(&[(z(i), z(i + 1)), (z(i + 1), z(i))]) == f)
    }

    pub fn value_eq(&self, o: &ShuffleElement) -> bool {
        if self.nvars != o.nvars {
            return false;
        }
        match (&self.kind, &o.kind) {
            (Kind::Wheel { scalar: a, f: fa }, Kind::Wheel { scalar: b, f: fb }) => {
                a * &RatFun::from_poly(fa.clone()) == b * &RatFun::from_poly(fb.clone())
            }
            _ => self.to_ratfun() == o.to_ratfun(),
        }
    }
}

/// Shuffle product over the `C(n + n', n)` cosets. Two wheel-form inputs
/// stay in wheel form, otherwise the raw rational route is used.
pub fn shuffle_product(a: &ShuffleElement, b: &ShuffleElement) -> Result<ShuffleElement> {
    let (n, m) = (a.nvars, b.nvars);
    let total = n + m;
    if total > Var::MAX_Z {
        return Err(CoreError::InvalidInput(format!("{total} variables exceed the registry")));
    }
    match (&a.kind, &b.kind) {
        (Kind::Wheel { scalar: sa, f: fa }, Kind::Wheel { scalar: sb, f: fb }) => {
            let all: Vec<usize> = (1..=total).collect();
            let s = qt_poly(1, -1);
            let q = qt_poly(1, 0);
            let tinv = qt_poly(0, -1);
            let terms: Vec<Poly> = cosets(total, n)
                .into_par_iter()
                .map(|(sa_, sb_)| {
                    let mut t = &place(fa, &sa_) * &place(fb, &sb_);
                    let mut inversions = 0;
                    let mut mon = Mon::ONE;
                    for &i in &sa_ {
                        for &j in &sb_ {
                            if i < j {
                                inversions += 1;
                            }
                            let (zi, zj) = (zp(i), zp(j));
                            let f1 = &zi - &(&s * &zj);
                            let f2 = &zj - &(&q * &zi);
                            let f3 = &zj - &(&tinv * &zi);
                            t = &t * &(&(&f1 * &f2) * &f3);
                            mon = mon.mul(&Mon::from_pairs(&[(z(i), -1), (z(j), -1)]));
                        }
                    }
                    t = &t.mul_mon(&mon) * &(&vandermonde(&sa_) * &vandermonde(&sb_));
                    if inversions % 2 == 1 {
                        -t
                    } else {
                        t
                    }
                })
                .collect();
            let num = terms.into_iter().fold(Poly::zero(), |acc, t| &acc + &t);
            let f = num
                .div_exact(&vandermonde(&all))
                .ok_or_else(|| CoreError::NotWheelForm("symmetrized numerator not divisible by V".into()))?;
            Ok(ShuffleElement::wheel(total, sa * sb, f))
        }
        _ => {
            let (fa, fb) = (a.to_ratfun(), b.to_ratfun());
            let mut acc = RatFun::zero();
            for (sa_, sb_) in cosets(total, n) {
                let mut t = &place_rf(&fa, &sa_) * &place_rf(&fb, &sb_);
                for &i in &sa_ {
                    for &j in &sb_ {
                        let x = RatFun::monomial(Mon::from_pairs(&[(z(i), 1), (z(j), -1)]));
                        t = &t * &zeta(&x)?;
                    }
                }
                acc += &t;
            }
            Ok(ShuffleElement::raw(total, acc))
        }
    }
}

/// `F_n = alpha^n prod_{i != j} zeta(z_i/z_j)` in wheel form.
pub fn make_f(n: usize) -> ShuffleElement {
    let s = qt_poly(1, -1);
    let mut f = Poly::one();
    for i in 1..=n {
        for j in i + 1..=n {
            let a = Poly::monomial(Mon::from_pairs(&[(z(i), 1), (z(j), -1)]), 1);
            let b = Poly::monomial(Mon::from_pairs(&[(z(j), 1), (z(i), -1)]), 1);
            f = &f * &(&(&a - &s) * &(&b - &s));
        }
    }
    ShuffleElement::wheel(n, alpha().pow(n as i32).unwrap(), f)
}

/// `F_n` straight from its definition as a rational function.
pub fn make_f_raw(n: usize) -> Result<ShuffleElement> {
    let mut r = alpha().pow(n as i32)?;
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                r = &r * &zeta(&RatFun::monomial(Mon::from_pairs(&[(z(i), 1), (z(j), -1)])))?;
            }
        }
    }
    Ok(ShuffleElement::raw(n, r))
}

/// `f(x q/t, x q, x, z_4..) = 0` and `f(x q/t, x/t, x, z_4..) = 0`.
pub fn wheel_check(e: &ShuffleElement) -> Result<bool> {
    if e.nvars < 3 {
        return Err(CoreError::InvalidInput("wheel conditions need at least 3 variables".into()));
    }
    let Kind::Wheel { f, .. } = e.to_wheel()?.kind else { unreachable!() };
    let x = Mon::var(z(3));
    let first = f.substitute_vars(&[(z(1), x.mul(&qt_mon(1, -1))), (z(2), x.mul(&qt_mon(1, 0)))]);
    let second = f.substitute_vars(&[(z(1), x.mul(&qt_mon(1, -1))), (z(2), x.mul(&qt_mon(0, -1)))]);
    Ok(first.is_zero() && second.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use toroidal_exact::rf_parse;

    #[test]
    fn zeta_roots_and_poles() {
        assert!(zeta(&RatFun::one()).unwrap().is_zero());
        assert!(zeta(&RatFun::qt(1, -1)).unwrap().is_zero());
        assert!(zeta(&RatFun::q()).is_err());
        let x = RatFun::monomial(Mon::var(z(1)));
        let p = &zeta(&x).unwrap() * &zeta(&x.inv().unwrap()).unwrap();
        assert_eq!(p, p.substitute_mon(&[(z(1), Mon::var_pow(z(1), -1))]).unwrap());
    }

    #[test]
    fn unit_and_generators() {
        let one = ShuffleElement::one();
        let f2 = make_f(2);
        assert!(shuffle_product(&one, &f2).unwrap().value_eq(&f2));
        let e = ShuffleElement::raw(1, RatFun::one());
        let p = shuffle_product(&e, &e).unwrap();
        let want = rf_parse("(z1/z2 - 1)*(z1/z2 - q/t)/((z1/z2 - q)*(z1/z2 - 1/t)) + (z2/z1 - 1)*(z2/z1 - q/t)/((z2/z1 - q)*(z2/z1 - 1/t))").unwrap();
        assert_eq!(p.to_ratfun(), want);
        let w = ShuffleElement::wheel(1, RatFun::one(), Poly::one());
        assert_eq!(shuffle_product(&w, &w).unwrap().to_ratfun(), want);
    }

    #[test]
    fn wheel_form_of_f_matches_definition() {
        for n in 0..=3 {
            assert_eq!(make_f(n).to_ratfun(), make_f_raw(n).unwrap().to_ratfun());
        }
        assert_eq!(make_f(1).to_ratfun(), alpha());
    }

    #[test]
    fn f_two_expansion() {
        let want = &alpha().pow(2).unwrap()
            * &rf_parse("(z1 - z2)*(z1 - q/t*z2)*(z2 - z1)*(z2 - q/t*z1)/((z1 - q*z2)*(z1 - z2/t)*(z2 - q*z1)*(z2 - z1/t))").unwrap();
        assert_eq!(make_f(2).to_ratfun(), want);
    }

    #[test]
    fn wheel_conditions() {
        assert!(wheel_check(&make_f(3)).unwrap());
        assert!(!wheel_check(&ShuffleElement::wheel(3, RatFun::one(), Poly::one())).unwrap());
        let f1 = make_f(1);
        let f11 = shuffle_product(&f1, &f1).unwrap();
        assert!(wheel_check(&shuffle_product(&f11, &f1).unwrap()).unwrap());
        assert!(make_f(3).is_symmetric());
    }

    #[test]
    fn raw_and_wheel_routes_agree() {
        let a = make_f(1);
        let b = make_f(2);
        let wheel = shuffle_product(&a, &b).unwrap();
        let raw = shuffle_product(&make_f_raw(1).unwrap(), &make_f_raw(2).unwrap()).unwrap();
        assert_eq!(wheel.to_ratfun(), raw.to_ratfun());
        assert!(raw.to_wheel().unwrap().value_eq(&wheel));
    }
}
