//! The Fock module of the Heisenberg algebra, realized on symmetric
//! functions: `a_{-r}` multiplies by `p_r`, and `a_r` acts as
//! `r (1 - q^r)/(1 - t^r) d/dp_r`. The pairing is `<a_a | a_b> = delta z_a(q, t)`.

use std::collections::BTreeMap;

use toroidal_exact::RatFun;

use crate::partitions::{enumerate, p_binomial, z_factor, Partition};

/// Vector in the basis `|a_lambda> = a_{-lambda_1} a_{-lambda_2} ... |0>`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FockVector {
    pub coeffs: BTreeMap<Partition, RatFun>,
}

impl FockVector {
    pub fn basis(lambda: &Partition) -> FockVector {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(lambda.clone(), RatFun::one());
        FockVector { coeffs }
    }

    pub fn vacuum() -> FockVector {
        FockVector::basis(&Partition::empty())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn push(&mut self, k: Partition, c: RatFun) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k.clone()).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// `<a_alpha | self>`.
    pub fn pair_with_basis(&self, alpha: &Partition) -> RatFun {
        match self.coeffs.get(alpha) {
            Some(c) => c * &z_factor(alpha),
            None => RatFun::zero(),
        }
    }
}

/// `r (1 - q^r)/(1 - t^r)`.
pub fn mode_factor(r: u32) -> RatFun {
    let r = r as i32;
    &RatFun::int(r) * &(&(&RatFun::one() - &RatFun::qt(r, 0)) / &(&RatFun::one() - &RatFun::qt(0, r)))
}

/// Apply `a_{modes[0]} a_{modes[1]} ...` (rightmost acts first). A
/// negative mode is a creation operator.
pub fn heisenberg_apply(modes: &[i32], v: &FockVector) -> FockVector {
    let mut cur = v.clone();
    for &m in modes.iter().rev() {
        assert!(m != 0, "a_0 is not part of the algebra");
        let mut next = FockVector::default();
        for (k, c) in &cur.coeffs {
            if m < 0 {
                next.push(k.add(&Partition::single((-m) as u32)), c.clone());
            } else {
                let r = m as u32;
                let mult = k.multiplicity(r);
                if mult > 0 {
                    let f = &mode_factor(r) * &RatFun::int(mult);
                    next.push(k.sub(&Partition::single(r)).unwrap(), c * &f);
                }
            }
        }
        cur = next;
    }
    cur
}

/// `T^{mu,nu}_{alpha,beta} = <a_alpha| a_{-mu} a_nu |a_beta>`, or with
/// `inverse` the entry `(T^-1)^{alpha,beta}_{mu,nu}` of the inverse matrix.
pub fn t_entry(alpha: &Partition, beta: &Partition, mu: &Partition, nu: &Partition, inverse: bool) -> RatFun {
    if !inverse {
        let (Some(k1), Some(k2)) = (alpha.sub(mu), beta.sub(nu)) else {
            return RatFun::zero();
        };
        if k1 != k2 {
            return RatFun::zero();
        }
        let c = &z_factor(alpha) * &z_factor(nu);
        c.scale_int(&p_binomial(beta, nu))
    } else {
        let (Some(k1), Some(k2)) = (mu.sub(alpha), nu.sub(beta)) else {
            return RatFun::zero();
        };
        if k1 != k2 {
            return RatFun::zero();
        }
        let sign = if k1.len() % 2 == 0 { 1 } else { -1 };
        let den = &(&z_factor(&k1) * &z_factor(alpha)) * &z_factor(beta);
        &RatFun::int(sign) / &den
    }
}

/// Matrix element computed from the Heisenberg action directly.
pub fn t_entry_from_action(alpha: &Partition, beta: &Partition, mu: &Partition, nu: &Partition) -> RatFun {
    let mut modes: Vec<i32> = mu.parts().iter().map(|&r| -(r as i32)).collect();
    modes.extend(nu.parts().iter().map(|&r| r as i32));
    heisenberg_apply(&modes, &FockVector::basis(beta)).pair_with_basis(alpha)
}

/// Pairs `(a, b)` with `|a| + |b| <= n`.
pub fn index_pairs_up_to(n: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for w in 0..=n {
        for k in (0..=w).rev() {
            for a in enumerate(k) {
                for b in enumerate(w - k) {
                    out.push((a.clone(), b));
                }
            }
        }
    }
    out
}

/// `sum_{mu,nu} T^{mu,nu}_{alpha,beta} (T^-1)^{alpha',beta'}_{mu,nu} = delta`
/// for all index pairs of total weight at most `n`.
pub fn verify_t_inverse(n: u32) -> bool {
    verify_inverse_with(n, &|a, b, m, v| t_entry(a, b, m, v, true))
}

pub(crate) fn verify_inverse_with(
    n: u32,
    inv: &dyn Fn(&Partition, &Partition, &Partition, &Partition) -> RatFun,
) -> bool {
    let pairs = index_pairs_up_to(n);
    for (a, b) in &pairs {
        for (a2, b2) in &pairs {
            let mut s = RatFun::zero();
            for mu in a.submultisets() {
                if !mu.contains(a2) {
                    continue;
                }
                for nu in b.submultisets() {
                    if !nu.contains(b2) {
                        continue;
                    }
                    let t = t_entry(a, b, &mu, &nu, false);
                    if t.is_zero() {
                        continue;
                    }
                    s = &s + &(&t * &inv(a2, b2, &mu, &nu));
                }
            }
            let expect = (a == a2 && b == b2) as i64;
            if s != RatFun::int(expect) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn annihilation_on_single_mode() {
        let v = heisenberg_apply(&[1], &FockVector::basis(&p(&[1])));
        assert_eq!(v.coeffs.get(&Partition::empty()), Some(&"(1 - q)/(1 - t)".parse().unwrap()));
    }

    #[test]
    fn commutator() {
        // [a_r, a_{-s}] = delta r (1-q^r)/(1-t^r)
        let x = FockVector::basis(&p(&[2, 1]));
        for (r, s) in [(1, 1), (2, 2), (1, 2), (2, 1)] {
            let ab = heisenberg_apply(&[r, -s], &x);
            let ba = heisenberg_apply(&[-s, r], &x);
            let mut diff = ab.clone();
            for (k, c) in &ba.coeffs {
                diff.push(k.clone(), -c);
            }
            if r == s {
                let expect = x.coeffs[&p(&[2, 1])].clone() * mode_factor(r as u32);
                assert_eq!(diff.coeffs.len(), 1);
                assert_eq!(diff.coeffs[&p(&[2, 1])], expect);
            } else {
                assert!(diff.is_zero());
            }
        }
    }

    #[test]
    fn t_matches_action() {
        for (a, b) in index_pairs_up_to(3) {
            for mu in a.submultisets() {
                for nu in enumerate(b.size()).into_iter().chain(b.submultisets()) {
                    assert_eq!(t_entry(&a, &b, &mu, &nu, false), t_entry_from_action(&a, &b, &mu, &nu));
                }
            }
        }
    }

    #[test]
    fn inverse_up_to_weight_three() {
        assert!(verify_t_inverse(3));
    }

    #[test]
    fn mu_alpha_bracket_is_not_an_inverse() {
        let variant = |a: &Partition, b: &Partition, mu: &Partition, nu: &Partition| {
            let (Some(k1), Some(k2)) = (mu.sub(a), nu.sub(b)) else { return RatFun::zero() };
            if k1 != k2 {
                return RatFun::zero();
            }
            let sign = if k1.len() % 2 == 0 { 1 } else { -1 };
            let c = RatFun::int(sign).scale_int(&p_binomial(mu, a));
            &c / &(&z_factor(a) * &z_factor(nu))
        };
        assert!(verify_inverse_with(1, &variant));
        assert!(!verify_inverse_with(3, &variant));
    }
}
