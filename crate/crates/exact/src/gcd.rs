//! Multivariate gcd over the integers.
//!
//! Monomials are units of the Laurent ring, so gcds are returned without
//! monomial factors and with a positive leading coefficient. The core is a
//! modular algorithm: images mod 62-bit primes are computed by dense
//! evaluation/interpolation, combined by CRT, and accepted only after exact
//! trial division over Z.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::modp::{self, MPoly, Zp};
use crate::poly::{div_proper, Poly};
use crate::var::{Mon, NVARS};

/// Result of [`gcd_cofactors`]: `a = g * ca` and `b = g * cb`.
pub struct GcdResult {
    pub g: Poly,
    pub ca: Poly,
    pub cb: Poly,
}

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    gcd_cofactors(a, b).g
}

pub fn gcd_cofactors(a: &Poly, b: &Poly) -> GcdResult {
    if a.is_zero() || b.is_zero() {
        let nz = if a.is_zero() { b } else { a };
        if nz.is_zero() {
            return GcdResult { g: Poly::zero(), ca: Poly::zero(), cb: Poly::zero() };
        }
        let m = nz.min_exps();
        let mut g = nz.mul_mon(&m.inv());
        if g.lead_is_negative() {
            g = -g;
        }
        let unit = Poly::monomial(m, if nz.lead_is_negative() { -1 } else { 1 });
        return if a.is_zero() {
            GcdResult { g, ca: Poly::zero(), cb: unit }
        } else {
            GcdResult { g, ca: unit, cb: Poly::zero() }
        };
    }

    let conta = a.content();
    let contb = b.content();
    let c = conta.gcd(&contb);
    let ma = a.min_exps();
    let mb = b.min_exps();
    let pa = a.mul_mon(&ma.inv()).div_scalar_exact(&conta);
    let pb = b.mul_mon(&mb.inv()).div_scalar_exact(&contb);
    let unit_a = Poly::monomial(ma, &conta / &c);
    let unit_b = Poly::monomial(mb, &contb / &c);

    let (g, qa, qb) = primitive_gcd(&pa, &pb);
    GcdResult { g: g.scale(&c), ca: &qa * &unit_a, cb: &qb * &unit_b }
}

/// Gcd of primitive proper polynomials without monomial factors.
fn primitive_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (g, qa, qb) = primitive_gcd_unsigned(a, b);
    if g.lead_is_negative() {
        (-g, -qa, -qb)
    } else {
        (g, qa, qb)
    }
}

fn primitive_gcd_unsigned(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    if a.is_constant() || b.is_constant() || a.len() == 1 || b.len() == 1 {
        return (Poly::one(), a.clone(), b.clone());
    }
    if let Some(q) = quick_divide(b, a) {
        return (a.clone(), Poly::one(), q);
    }
    if let Some(q) = quick_divide(a, b) {
        return (b.clone(), q, Poly::one());
    }

    // exponent deflation
    let mut step = [0i32; NVARS];
    let supp = a.support() | b.support();
    for (m, _) in a.terms().iter().chain(b.terms().iter()) {
        for i in 0..NVARS {
            step[i] = (step[i] as i64).gcd(&(m.0[i] as i64)) as i32;
        }
    }
    let used: Vec<usize> = (0..NVARS).filter(|i| supp & (1 << i) != 0).collect();
    // slot order: highest degree first, so the univariate leaf is the largest
    let da = a.max_exps();
    let db = b.max_exps();
    let mut order = used.clone();
    order.sort_by_key(|&i| {
        let s = step[i].max(1);
        std::cmp::Reverse((da.0[i].min(db.0[i]) / s as i16, da.0[i].max(db.0[i]) / s as i16))
    });
    let to_slots = |p: &Poly| -> Poly {
        Poly::from_terms(p.terms().iter().map(|(m, c)| {
            let mut r = Mon::ONE;
            for (slot, &i) in order.iter().enumerate() {
                r.0[slot] = m.0[i] / step[i].max(1) as i16;
            }
            (r, c.clone())
        }))
    };
    let from_slots = |p: &Poly| -> Poly {
        Poly::from_terms(p.terms().iter().map(|(m, c)| {
            let mut r = Mon::ONE;
            for (slot, &i) in order.iter().enumerate() {
                r.0[i] = m.0[slot] * step[i].max(1) as i16;
            }
            (r, c.clone())
        }))
    };
    let sa = to_slots(a);
    let sb = to_slots(b);
    let (g, qa, qb) = modular_gcd(&sa, &sb, order.len());
    (from_slots(&g), from_slots(&qa), from_slots(&qb))
}

/// Cheap divisibility probe used before the full algorithm.
fn quick_divide(a: &Poly, d: &Poly) -> Option<Poly> {
    if d.len() > a.len() {
        return None;
    }
    let amax = a.max_exps();
    let dmax = d.max_exps();
    if !dmax.divides(&amax) {
        return None;
    }
    div_proper(a, d)
}

fn lex_lead(p: &Poly) -> (Mon, BigInt) {
    let (m, c) = p.terms().iter().max_by(|x, y| x.0.cmp(&y.0)).unwrap();
    (*m, c.clone())
}

fn reduce(p: &Poly, prime: Zp) -> MPoly {
    let pb = BigInt::from(prime);
    let m: BTreeMap<Mon, Zp> = p
        .terms()
        .iter()
        .map(|(mon, c)| (*mon, c.mod_floor(&pb).to_u64().unwrap()))
        .collect();
    MPoly::from_map(m)
}

fn modular_gcd(a: &Poly, b: &Poly, k: usize) -> (Poly, Poly, Poly) {
    let (_, lca) = lex_lead(a);
    let (_, lcb) = lex_lead(b);
    let gamma = lca.gcd(&lcb);
    let mut modulus = BigInt::one();
    let mut acc: BTreeMap<Mon, BigInt> = BTreeMap::new();
    let mut cur_lead: Option<Mon> = None;
    let mut last_lift: Option<Poly> = None;
    for &prime in modp::primes() {
        let pb = BigInt::from(prime);
        if (&lca % &pb).is_zero() || (&lcb % &pb).is_zero() {
            continue;
        }
        let ap = reduce(a, prime);
        let bp = reduce(b, prime);
        let gp = modp::pgcd(&ap, &bp, k, prime);
        if gp.terms.len() == 1 && gp.terms[0].0.is_one() {
            return (Poly::one(), a.clone(), b.clone());
        }
        let gm = gamma.mod_floor(&pb).to_u64().unwrap();
        let lm = gp.terms[0].0;
        match cur_lead {
            Some(cl) if lm > cl => continue,
            Some(cl) if lm == cl => {
                crt_merge(&mut acc, &modulus, &gp, gm, prime);
                modulus *= &pb;
            }
            _ => {
                cur_lead = Some(lm);
                acc.clear();
                crt_merge(&mut acc, &BigInt::one(), &gp, gm, prime);
                modulus = pb.clone();
                last_lift = None;
            }
        }
        let lift = symmetric_lift(&acc, &modulus);
        let max_bits = lift.terms().iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
        let stable = last_lift.as_ref() == Some(&lift);
        if stable || max_bits + 24 < modulus.bits() {
            let cand = primitive(&lift);
            if let (Some(qa), Some(qb)) = (div_proper(a, &cand), div_proper(b, &cand)) {
                return (cand, qa, qb);
            }
        }
        last_lift = Some(lift);
    }
    panic!("modular gcd did not converge");
}

fn crt_merge(acc: &mut BTreeMap<Mon, BigInt>, modulus: &BigInt, img: &MPoly, scale: Zp, prime: Zp) {
    let pb = BigInt::from(prime);
    let minv = if modulus.is_one() {
        1
    } else {
        modp::invp((modulus % &pb).to_u64().unwrap(), prime)
    };
    let img: BTreeMap<Mon, Zp> =
        img.terms.iter().map(|&(m, c)| (m, modp::mulp(c, scale, prime))).collect();
    let mut keys: Vec<Mon> = acc.keys().cloned().collect();
    keys.extend(img.keys());
    keys.sort();
    keys.dedup();
    for key in keys {
        let r = img.get(&key).copied().unwrap_or(0);
        let old = acc.get(&key).cloned().unwrap_or_default();
        // x = old + modulus * ((r - old) * modulus^-1 mod p)
        let old_p = old.mod_floor(&pb).to_u64().unwrap();
        let h = modp::mulp(modp::subp(r, old_p, prime), minv, prime);
        let new = &old + modulus * BigInt::from(h);
        if new.is_zero() {
            acc.remove(&key);
        } else {
            acc.insert(key, new);
        }
    }
}

fn symmetric_lift(acc: &BTreeMap<Mon, BigInt>, modulus: &BigInt) -> Poly {
    let half: BigInt = modulus >> 1;
    Poly::from_terms(acc.iter().map(|(m, c)| {
        let c = c.mod_floor(modulus);
        let c = if c > half { c - modulus } else { c };
        (*m, c)
    }))
}

fn primitive(p: &Poly) -> Poly {
    let c = p.content();
    let mut r = p.div_scalar_exact(&c);
    if lex_lead(&r).1.sign() == Sign::Minus {
        r = -r;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::var::Var;

    fn v(x: Var) -> Poly {
        Poly::var(x)
    }

    #[test]
    fn common_factor_recovered() {
        let q = v(Var::QH);
        let t = v(Var::TH);
        let u = v(Var::U);
        let one = Poly::one();
        let h = &(&q * &t) - &(&u * &Poly::constant(3)) + &one;
        let f = &(&q - &t) * &h;
        let g = &(&q * &q + &u) * &h;
        let r = gcd_cofactors(&f, &g);
        assert_eq!(r.g, h);
        assert_eq!(&r.g * &r.ca, f);
        assert_eq!(&r.g * &r.cb, g);
    }

    #[test]
    fn laurent_and_content() {
        let q = v(Var::QH);
        let one = Poly::one();
        let f = (&q - &one).scale(&BigInt::from(6)).mul_mon(&Mon::var_pow(Var::QH, -3));
        let g = (&q * &q - &one).scale(&BigInt::from(4));
        let r = gcd_cofactors(&f, &g);
        assert_eq!(r.g, (&q - &one).scale(&BigInt::from(2)));
        assert_eq!(&r.g * &r.ca, f);
        assert_eq!(&r.g * &r.cb, g);
    }

    #[test]
    fn coprime() {
        let q = v(Var::QH);
        let t = v(Var::TH);
        let one = Poly::one();
        let f = &q + &one;
        let g = &t + &one;
        assert!(gcd(&f, &g).is_one());
    }

    #[test]
    fn deflated_inputs() {
        let q2 = Poly::monomial(Mon::var_pow(Var::QH, 2), 1);
        let t2 = Poly::monomial(Mon::var_pow(Var::TH, 2), 1);
        let one = Poly::one();
        let f = &(&q2 - &t2) * &(&q2 + &one);
        let g = &(&q2 - &t2) * &(&t2 + &one);
        assert_eq!(gcd(&f, &g), &q2 - &t2);
    }
}
