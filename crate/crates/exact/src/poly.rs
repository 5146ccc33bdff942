use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::var::{grlex_cmp, Mon, Var, NVARS};

/// Sparse multivariate Laurent polynomial with integer coefficients.
///
/// Terms are kept in strictly descending graded-lex order with nonzero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mon, BigInt)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Poly {
        Poly::monomial(Mon::ONE, c)
    }

    pub fn monomial(m: Mon, c: impl Into<BigInt>) -> Poly {
        let c = c.into();
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Mon::var(v), 1)
    }

    /// Build from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mon, BigInt)>) -> Poly {
        let mut acc: HashMap<Mon, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: HashMap<Mon, BigInt>) -> Poly {
        let mut terms: Vec<(Mon, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| grlex_cmp(&b.0, &a.0));
        Poly { terms }
    }

    /// Terms already sorted descending and free of zeros.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Mon, BigInt)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| grlex_cmp(&w[0].0, &w[1].0).is_gt()));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mon, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mon, BigInt)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term in graded-lex order.
    pub fn lead(&self) -> Option<&(Mon, BigInt)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: &Mon) -> BigInt {
        self.terms
            .binary_search_by(|(x, _)| grlex_cmp(m, x))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    /// Divide every coefficient by `c`; panics unless exact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| {
                    let (q, r) = a.div_rem(c);
                    assert!(r.is_zero(), "inexact scalar division");
                    (*m, q)
                })
                .collect(),
        }
    }

    pub fn mul_mon(&self, m: &Mon) -> Poly {
        // multiplication by a monomial preserves the order
        Poly { terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exps(&self) -> Mon {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mon::ONE,
            Some((m, _)) => it.fold(*m, |acc, (x, _)| acc.emin(x)),
        }
    }

    pub fn max_exps(&self) -> Mon {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mon::ONE,
            Some((m, _)) => it.fold(*m, |acc, (x, _)| acc.emax(x)),
        }
    }

    pub fn degree(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    pub fn min_degree(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).min()
    }

    /// Bitmask of variables occurring with nonzero exponent.
    pub fn support(&self) -> u16 {
        self.terms.iter().fold(0, |s, (m, _)| s | m.support())
    }

    pub fn involves(&self, v: Var) -> bool {
        self.support() & (1 << v.index()) != 0
    }

    pub fn is_proper(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_proper())
    }

    /// Substitute every variable by a Laurent monomial.
    pub fn substitute_mon(&self, image: &[Mon; NVARS]) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.substitute(image), c.clone())))
    }

    /// Substitute selected variables by Laurent monomials, the rest fixed.
    pub fn substitute_vars(&self, subs: &[(Var, Mon)]) -> Poly {
        let mut image = identity_image();
        for (v, m) in subs {
            image[v.index()] = *m;
        }
        self.substitute_mon(&image)
    }

    /// Evaluate `v` at an integer; the exponents of `v` must be nonnegative.
    pub fn eval_int(&self, v: Var, x: &BigInt) -> Poly {
        let mut pows: Vec<BigInt> = vec![BigInt::one()];
        let mut acc: HashMap<Mon, BigInt> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            assert!(e >= 0, "eval_int needs nonnegative exponents");
            while pows.len() <= e as usize {
                let next = pows.last().unwrap() * x;
                pows.push(next);
            }
            let mut k = *m;
            k.set_exp(v, 0);
            *acc.entry(k).or_default() += c * &pows[e as usize];
        }
        Poly::from_map(acc)
    }

    /// Coefficients with respect to `v`: pairs (exponent, coefficient free of `v`).
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<i32, Poly> {
        let mut groups: BTreeMap<i32, Vec<(Mon, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut k = *m;
            k.set_exp(v, 0);
            groups.entry(m.exp(v)).or_default().push((k, c.clone()));
        }
        // removing one variable can reorder terms under grlex, so resort
        groups.into_iter().map(|(e, ts)| (e, Poly::from_terms(ts))).collect()
    }

    pub fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Exact division. Returns `None` when `d` does not divide `self`
    /// in the Laurent polynomial ring.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.is_monomial() {
            let (m, c) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (x, a) in &self.terms {
                let (q, r) = a.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.push((x.div(m), q));
            }
            return Some(Poly::from_sorted_unchecked(out));
        }
        let ma = self.min_exps();
        let md = d.min_exps();
        let a = self.mul_mon(&ma.inv());
        let b = d.mul_mon(&md.inv());
        let q = div_proper(&a, &b)?;
        Some(q.mul_mon(&ma.div(&md)))
    }

    /// Evaluate at an exact rational point for every variable present.
    pub fn eval_at(&self, point: &dyn Fn(Var) -> Option<i64>) -> Option<num_rational::BigRational> {
        use num_rational::BigRational;
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for v in Var::all() {
                let e = m.exp(v);
                if e != 0 {
                    let x = BigRational::from_integer(BigInt::from(point(v)?));
                    if x.is_zero() && e < 0 {
                        return None;
                    }
                    t *= num_traits::pow::Pow::pow(&x, e);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Sign of the leading coefficient.
    pub fn lead_is_negative(&self) -> bool {
        self.terms.first().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }
}

pub(crate) fn identity_image() -> [Mon; NVARS] {
    let mut image = [Mon::ONE; NVARS];
    for v in Var::all() {
        image[v.index()] = Mon::var(v);
    }
    image
}

/// Division of polynomials with nonnegative exponents, lex order.
pub(crate) fn div_proper(a: &Poly, d: &Poly) -> Option<Poly> {
    let (dm, dc) = d.terms.iter().max_by(|x, y| x.0.cmp(&y.0)).unwrap();
    let (dm, dc) = (*dm, dc.clone());
    let mut rem: BTreeMap<Mon, BigInt> = a.terms.iter().cloned().collect();
    let mut quot: Vec<(Mon, BigInt)> = Vec::new();
    let amax = a.max_exps();
    while let Some((m, c)) = rem.pop_last() {
        if !dm.divides(&m) {
            return None;
        }
        let (qc, r) = c.div_rem(&dc);
        if !r.is_zero() {
            return None;
        }
        let qm = m.div(&dm);
        if !qm.mul(&d.max_exps()).divides(&amax) {
            return None;
        }
        for (x, b) in &d.terms {
            if *x == dm {
                continue;
            }
            let k = x.mul(&qm);
            let e = rem.entry(k).or_default();
            *e -= &qc * b;
            if e.is_zero() {
                rem.remove(&k);
            }
        }
        quot.push((qm, qc));
    }
    Some(Poly::from_terms(quot))
}

fn merge(a: &Poly, b: &Poly, negate_b: bool) -> Poly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        let (ma, ca) = &a.terms[i];
        let (mb, cb) = &b.terms[j];
        match grlex_cmp(ma, mb) {
            std::cmp::Ordering::Greater => {
                out.push((*ma, ca.clone()));
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((*mb, if negate_b { -cb } else { cb.clone() }));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { ca - cb } else { ca + cb };
                if !c.is_zero() {
                    out.push((*ma, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(b.terms[j..].iter().map(|(m, c)| (*m, if negate_b { -c } else { c.clone() })));
    Poly::from_sorted_unchecked(out)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        merge(self, o, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        merge(self, o, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return Poly { terms: big.terms.iter().map(|(x, a)| (x.mul(m), a * c)).collect() };
        }
        let mut acc: HashMap<Mon, BigInt> = HashMap::with_capacity(self.len() * o.len() / 2 + 1);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(e) => *e += ca * cb,
                    None => {
                        acc.insert(m, ca * cb);
                    }
                }
            }
        }
        Poly::from_map(acc)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: &Poly) -> Poly {
                (&self).$f(o)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                self.$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl fmt::Display for Poly {
    /// Sum of terms in descending graded-lex order, e.g. `-q*t^-1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
