//! Torus characters at fixed points of the moduli of framed rank-`r`
//! sheaves, stored as multisets of Laurent monomials in `q1, q2, u_1..u_r`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};
use toroidal_exact::{Mon, RatFun, Var};

use crate::partitions::Partition;

/// `q1^a q2^b u_1^{e_1} ... u_r^{e_r}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight {
    pub q1: i32,
    pub q2: i32,
    pub u: Vec<i32>,
}

impl Weight {
    fn ratio(r: usize, num: usize, den: usize, q1: i32, q2: i32) -> Weight {
        let mut u = vec![0; r];
        u[num] += 1;
        u[den] -= 1;
        Weight { q1, q2, u }
    }

    /// `q1^-1 q2^-1 w^-1`.
    pub fn dual(&self) -> Weight {
        Weight { q1: -self.q1 - 1, q2: -self.q2 - 1, u: self.u.iter().map(|e| -e).collect() }
    }

    /// Pairing with the cocharacter `(s, s^-1, s^{d_1}, ..., s^{d_r})`.
    pub fn pairing(&self, d: &[i64]) -> i64 {
        let us: i64 = self.u.iter().zip(d).map(|(&e, &di)| e as i64 * di).sum();
        self.q1 as i64 - self.q2 as i64 + us
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |name: String, e: i32| match e {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{e}")),
        };
        for (k, &e) in self.u.iter().enumerate() {
            push(format!("u{}", k + 1), e);
        }
        push("q1".into(), self.q1);
        push("q2".into(), self.q2);
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WeightMultiset {
    pub weights: BTreeMap<Weight, u32>,
}

impl WeightMultiset {
    pub fn insert(&mut self, w: Weight) {
        *self.weights.entry(w).or_insert(0) += 1;
    }

    pub fn len(&self) -> usize {
        self.weights.values().map(|&m| m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn count(&self, w: &Weight) -> u32 {
        self.weights.get(w).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let m: Map<String, Value> = self.weights.iter().map(|(w, &c)| (w.to_string(), Value::from(c))).collect();
        Value::Object(m)
    }
}

impl FromIterator<Weight> for WeightMultiset {
    fn from_iter<I: IntoIterator<Item = Weight>>(it: I) -> Self {
        let mut m = WeightMultiset::default();
        for w in it {
            m.insert(w);
        }
        m
    }
}

/// Character of the tangent space at the fixed point labelled by `lams`.
pub fn tangent_character(lams: &[Partition]) -> WeightMultiset {
    let r = lams.len();
    let mut out = WeightMultiset::default();
    for (i, li) in lams.iter().enumerate() {
        for (j, lj) in lams.iter().enumerate() {
            for (bi, bj) in li.boxes() {
                let a = li.arm(bi, bj);
                let l = lj.leg(bi, bj);
                out.insert(Weight::ratio(r, j, i, -a - 1, l));
                out.insert(Weight::ratio(r, i, j, a, -l - 1));
            }
        }
    }
    out
}

/// `prod_boxes (1 - q1^{a+1} q2^-l)(1 - q1^-a q2^{l+1})`.
pub fn fixed_restriction(lambda: &Partition) -> RatFun {
    let one = RatFun::one();
    let m = |a: i32, b: i32| RatFun::monomial(Mon::from_pairs(&[(Var::Q1, a), (Var::Q2, b)]));
    let mut r = RatFun::one();
    for (i, j) in lambda.boxes() {
        let a = lambda.arm(i, j);
        let l = lambda.leg(i, j);
        r = &r * &(&(&one - &m(a + 1, -l)) * &(&one - &m(-a, l + 1)));
    }
    r
}

/// The multiset is stable under `w -> q1^-1 q2^-1 w^-1`.
pub fn symplectic_pair_check(w: &WeightMultiset) -> bool {
    w.weights.iter().all(|(x, &c)| w.count(&x.dual()) == c)
}

/// Cocharacter exponents `d_1 << ... << d_r` adapted to fixed points of weight `n`.
pub fn separated_cocharacter(r: usize, n: u32) -> Vec<i64> {
    let gap = 4 * n as i64 + 4;
    (0..r as i64).map(|k| k * gap).collect()
}

/// Split into the parts of positive and negative pairing with `d`; weights
/// pairing to zero are returned third.
pub fn sign_split(w: &WeightMultiset, d: &[i64]) -> (WeightMultiset, WeightMultiset, WeightMultiset) {
    let (mut pos, mut neg, mut zero) = Default::default();
    for (x, &c) in &w.weights {
        let target: &mut WeightMultiset = match x.pairing(d).signum() {
            1 => &mut pos,
            -1 => &mut neg,
            _ => &mut zero,
        };
        for _ in 0..c {
            target.insert(x.clone());
        }
    }
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use toroidal_exact::rf_parse;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn small_characters() {
        assert!(tangent_character(&[Partition::empty()]).is_empty());
        let one = tangent_character(&[p(&[1])]);
        let want: WeightMultiset =
            [Weight { q1: -1, q2: 0, u: vec![0] }, Weight { q1: 0, q2: -1, u: vec![0] }].into_iter().collect();
        assert_eq!(one, want);
        let two = tangent_character(&[p(&[1]), Partition::empty()]);
        assert_eq!(two.len(), 4);
        // the leg of (1,1) in the empty diagram is -1
        assert_eq!(two.count(&Weight { q1: -1, q2: -1, u: vec![-1, 1] }), 1);
        assert_eq!(two.count(&Weight { q1: 0, q2: 0, u: vec![1, -1] }), 1);
    }

    #[test]
    fn restriction_examples() {
        assert!(fixed_restriction(&Partition::empty()).is_one());
        assert_eq!(fixed_restriction(&p(&[1])), rf_parse("(1 - q1)*(1 - q2)").unwrap());
        assert_eq!(fixed_restriction(&p(&[2])), rf_parse("(1 - q1^2)*(1 - q2/q1)*(1 - q1)*(1 - q2)").unwrap());
    }

    #[test]
    fn pairing_examples() {
        assert!(symplectic_pair_check(&WeightMultiset::default()));
        let w: WeightMultiset = [Weight { q1: -1, q2: 0, u: vec![] }, Weight { q1: 0, q2: -1, u: vec![] }].into_iter().collect();
        assert!(symplectic_pair_check(&w));
        let lone: WeightMultiset = [Weight { q1: 1, q2: 0, u: vec![] }].into_iter().collect();
        assert!(!symplectic_pair_check(&lone));
    }

    #[test]
    fn halves_have_equal_size() {
        let lams = [p(&[2, 1]), p(&[1])];
        let ch = tangent_character(&lams);
        let d = separated_cocharacter(2, 4);
        let (pos, neg, zero) = sign_split(&ch, &d);
        assert!(zero.is_empty());
        assert_eq!(pos.len(), neg.len());
        // the u_2/u_1 terms are the attracting ones
        for w in ch.weights.keys() {
            if w.u == vec![-1, 1] {
                assert!(pos.count(w) > 0);
            }
        }
    }
}
