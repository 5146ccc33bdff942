//! Arithmetic in Z/p and dense modular gcd by evaluation and interpolation.
//!
//! Polynomials here have nonnegative exponents in slots `0..k`; slot order is
//! the recursion order, the last slot being eliminated first.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::var::Mon;

pub type Zp = u64;

#[inline]
pub fn mulp(a: Zp, b: Zp, p: Zp) -> Zp {
    ((a as u128 * b as u128) % p as u128) as Zp
}

#[inline]
pub fn addp(a: Zp, b: Zp, p: Zp) -> Zp {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn subp(a: Zp, b: Zp, p: Zp) -> Zp {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn powp(mut a: Zp, mut e: u64, p: Zp) -> Zp {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulp(r, a, p);
        }
        a = mulp(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invp(a: Zp, p: Zp) -> Zp {
    assert!(!a.is_multiple_of(p), "inverse of zero mod p");
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (p as i128, a as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    if t < 0 {
        t += p as i128;
    }
    t as Zp
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powp(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulp(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Descending list of primes just below 2^62.
pub fn primes() -> &'static [u64] {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| {
        let mut v = Vec::new();
        let mut n = (1u64 << 62) - 1;
        while v.len() < 256 {
            if is_prime(n) {
                v.push(n);
            }
            n -= 2;
        }
        v
    })
}

// ---------------------------------------------------------------------------
// dense univariate

pub type UPoly = Vec<Zp>;

fn utrim(a: &mut UPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn ueval(a: &[Zp], x: Zp, p: Zp) -> Zp {
    let mut r = 0;
    for &c in a.iter().rev() {
        r = addp(mulp(r, x, p), c, p);
    }
    r
}

fn umul(a: &[Zp], b: &[Zp], p: Zp) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = addp(r[i + j], mulp(x, y, p), p);
        }
    }
    utrim(&mut r);
    r
}

fn uscale(a: &mut [Zp], c: Zp, p: Zp) {
    for x in a.iter_mut() {
        *x = mulp(*x, c, p);
    }
}

/// Remainder and quotient of `a / b`.
fn udivrem(a: &[Zp], b: &[Zp], p: Zp) -> (UPoly, UPoly) {
    let mut r = a.to_vec();
    utrim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = invp(*b.last().unwrap(), p);
    let mut q = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = mulp(*r.last().unwrap(), inv, p);
        q[shift] = c;
        for (i, &y) in b.iter().enumerate() {
            r[shift + i] = subp(r[shift + i], mulp(c, y, p), p);
        }
        utrim(&mut r);
    }
    (q, r)
}

fn umonic(mut a: UPoly, p: Zp) -> UPoly {
    if let Some(&l) = a.last() {
        let inv = invp(l, p);
        uscale(&mut a, inv, p);
    }
    a
}

pub fn ugcd(a: &[Zp], b: &[Zp], p: Zp) -> UPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    utrim(&mut x);
    utrim(&mut y);
    while !y.is_empty() {
        let (_, r) = udivrem(&x, &y, p);
        x = y;
        y = r;
    }
    umonic(x, p)
}

// ---------------------------------------------------------------------------
// sparse multivariate, lex order on slots

/// Terms sorted descending by the derived (lex) monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    pub terms: Vec<(Mon, Zp)>,
}

impl MPoly {
    pub fn from_map(m: BTreeMap<Mon, Zp>) -> MPoly {
        MPoly { terms: m.into_iter().rev().filter(|(_, c)| *c != 0).collect() }
    }

    fn constant(c: Zp) -> MPoly {
        MPoly { terms: if c == 0 { vec![] } else { vec![(Mon::ONE, c)] } }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    fn lead_mon(&self) -> Mon {
        self.terms[0].0
    }

    fn monic(mut self, p: Zp) -> MPoly {
        if let Some(&(_, l)) = self.terms.first() {
            let inv = invp(l, p);
            for t in self.terms.iter_mut() {
                t.1 = mulp(t.1, inv, p);
            }
        }
        self
    }

    fn scale(mut self, c: Zp, p: Zp) -> MPoly {
        if c == 0 {
            return MPoly { terms: vec![] };
        }
        for t in self.terms.iter_mut() {
            t.1 = mulp(t.1, c, p);
        }
        self
    }
}

/// Split into dense univariate coefficients in slot `k`, keyed by the rest.
fn split_last(a: &MPoly, k: usize) -> BTreeMap<Mon, UPoly> {
    let mut out: BTreeMap<Mon, UPoly> = BTreeMap::new();
    for (m, c) in &a.terms {
        let e = m.0[k] as usize;
        let mut key = *m;
        key.0[k] = 0;
        let u = out.entry(key).or_default();
        if u.len() <= e {
            u.resize(e + 1, 0);
        }
        u[e] = *c;
    }
    out
}

fn join_last(groups: &BTreeMap<Mon, UPoly>, k: usize) -> MPoly {
    let mut m: BTreeMap<Mon, Zp> = BTreeMap::new();
    for (key, u) in groups {
        for (e, &c) in u.iter().enumerate() {
            if c != 0 {
                let mut x = *key;
                x.0[k] = e as i16;
                m.insert(x, c);
            }
        }
    }
    MPoly::from_map(m)
}

fn umax_deg(groups: &BTreeMap<Mon, UPoly>) -> usize {
    groups.values().map(|u| u.len().saturating_sub(1)).max().unwrap_or(0)
}

fn mul_univariate(a: &MPoly, u: &[Zp], k: usize, p: Zp) -> MPoly {
    let groups = split_last(a, k);
    let g: BTreeMap<Mon, UPoly> = groups.into_iter().map(|(key, v)| (key, umul(&v, u, p))).collect();
    join_last(&g, k)
}

/// Exact division test; returns the quotient when `d` divides `a`.
pub fn mdiv(a: &MPoly, d: &MPoly, p: Zp) -> Option<MPoly> {
    if d.is_zero() {
        return None;
    }
    let (dm, dc) = d.terms[0];
    let inv = invp(dc, p);
    let mut rem: BTreeMap<Mon, Zp> = a.terms.iter().cloned().collect();
    let mut quot: BTreeMap<Mon, Zp> = BTreeMap::new();
    let amax = a.terms.iter().fold(Mon::ONE, |acc, (m, _)| acc.emax(m));
    let dmax = d.terms.iter().fold(Mon::ONE, |acc, (m, _)| acc.emax(m));
    while let Some((m, c)) = rem.pop_last() {
        if !dm.divides(&m) {
            return None;
        }
        let qm = m.div(&dm);
        if !qm.mul(&dmax).divides(&amax) {
            return None;
        }
        let qc = mulp(c, inv, p);
        for &(x, b) in &d.terms[1..] {
            let key = x.mul(&qm);
            let e = rem.entry(key).or_insert(0);
            *e = subp(*e, mulp(qc, b, p), p);
            if *e == 0 {
                rem.remove(&key);
            }
        }
        quot.insert(qm, qc);
    }
    Some(MPoly::from_map(quot))
}

/// Monic gcd over Z/p of polynomials in slots `0..k`.
pub fn pgcd(a: &MPoly, b: &MPoly, k: usize, p: Zp) -> MPoly {
    if a.is_zero() {
        return b.clone().monic(p);
    }
    if b.is_zero() {
        return a.clone().monic(p);
    }
    if k == 0 || a.is_constant() || b.is_constant() {
        return MPoly::constant(1);
    }
    let last = k - 1;
    if k == 1 {
        let ua = split_last(a, last).remove(&Mon::ONE).unwrap_or_default();
        let ub = split_last(b, last).remove(&Mon::ONE).unwrap_or_default();
        let g = ugcd(&ua, &ub, p);
        let mut m = BTreeMap::new();
        m.insert(Mon::ONE, g);
        return join_last(&m, last);
    }

    let mut ga = split_last(a, last);
    let mut gb = split_last(b, last);
    let ca = groups_content(&ga, p);
    let cb = groups_content(&gb, p);
    for u in ga.values_mut() {
        *u = udivrem(u, &ca, p).0;
    }
    for u in gb.values_mut() {
        *u = udivrem(u, &cb, p).0;
    }
    let c = ugcd(&ca, &cb, p);
    let lca = ga.iter().next_back().unwrap().1.clone();
    let lcb = gb.iter().next_back().unwrap().1.clone();
    let g = ugcd(&lca, &lcb, p);
    let bound = g.len() - 1 + umax_deg(&ga).min(umax_deg(&gb));
    let a1 = join_last(&ga, last);
    let b1 = join_last(&gb, last);

    let with_content = |prim: MPoly| mul_univariate(&prim, &c, last, p).monic(p);

    let mut points: Vec<Zp> = Vec::new();
    let mut interp: BTreeMap<Mon, UPoly> = BTreeMap::new();
    let mut cur_lead: Option<Mon> = None;
    let mut beta: Zp = 0;
    loop {
        beta += 1;
        if ueval(&lca, beta, p) == 0 || ueval(&lcb, beta, p) == 0 {
            continue;
        }
        let ea = eval_groups(&ga, beta, p);
        let eb = eval_groups(&gb, beta, p);
        let img = pgcd(&ea, &eb, last, p);
        if img.is_constant() {
            return with_content(MPoly::constant(1));
        }
        let img = img.scale(ueval(&g, beta, p), p);
        let lm = img.lead_mon();
        match cur_lead {
            Some(cl) if lm > cl => continue,
            Some(cl) if lm == cl => newton_step(&mut interp, &points, &img, beta, p),
            _ => {
                cur_lead = Some(lm);
                points.clear();
                interp = img.terms.iter().map(|&(m, c)| (m, vec![c])).collect();
            }
        }
        points.push(beta);
        if points.len() > bound {
            let cont = groups_content(&interp, p);
            let prim: BTreeMap<Mon, UPoly> =
                interp.iter().map(|(key, u)| (*key, udivrem(u, &cont, p).0)).collect();
            let cand = join_last(&prim, last);
            if mdiv(&a1, &cand, p).is_some() && mdiv(&b1, &cand, p).is_some() {
                return with_content(cand);
            }
        }
    }
}

fn groups_content(groups: &BTreeMap<Mon, UPoly>, p: Zp) -> UPoly {
    let mut c: UPoly = Vec::new();
    for u in groups.values() {
        c = ugcd(&c, u, p);
        if c.len() == 1 {
            break;
        }
    }
    if c.is_empty() {
        vec![1]
    } else {
        c
    }
}

fn eval_groups(groups: &BTreeMap<Mon, UPoly>, x: Zp, p: Zp) -> MPoly {
    let m: BTreeMap<Mon, Zp> = groups.iter().map(|(key, u)| (*key, ueval(u, x, p))).collect();
    MPoly::from_map(m)
}

fn newton_step(interp: &mut BTreeMap<Mon, UPoly>, points: &[Zp], img: &MPoly, beta: Zp, p: Zp) {
    // q(x) = prod (x - b_i)
    let mut q: UPoly = vec![1];
    for &b in points {
        q = umul(&q, &[p - b, 1], p);
    }
    let qinv = invp(ueval(&q, beta, p), p);
    let targets: BTreeMap<Mon, Zp> = img.terms.iter().cloned().collect();
    let mut keys: Vec<Mon> = interp.keys().cloned().collect();
    keys.extend(targets.keys());
    keys.sort();
    keys.dedup();
    for key in keys {
        let target = targets.get(&key).copied().unwrap_or(0);
        let entry = interp.entry(key).or_default();
        let cur = ueval(entry, beta, p);
        let diff = mulp(subp(target, cur, p), qinv, p);
        if diff == 0 {
            continue;
        }
        if entry.len() < q.len() {
            entry.resize(q.len(), 0);
        }
        for (i, &qc) in q.iter().enumerate() {
            entry[i] = addp(entry[i], mulp(qc, diff, p), p);
        }
        utrim(entry);
    }
    interp.retain(|_, u| !u.is_empty());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_primes() {
        let p = primes()[0];
        assert!(p < 1 << 62);
        assert_eq!(mulp(invp(12345, p), 12345, p), 1);
        assert!(primes().windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn univariate_gcd() {
        let p = 101;
        // (x+1)(x+2) and (x+1)(x+3)
        let a = umul(&[1, 1], &[2, 1], p);
        let b = umul(&[1, 1], &[3, 1], p);
        assert_eq!(ugcd(&a, &b, p), vec![1, 1]);
    }
}
