//! Integer partitions as multisets of parts.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use toroidal_exact::{BigInt, RatFun};

use crate::error::CoreError;

/// A partition: parts in non-increasing order, all positive.
///
/// Ordered by size, then reverse-lexicographically, so iteration over a
/// sorted collection of partitions of one size matches [`enumerate`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// Sorts and drops zero parts.
    pub fn new(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn single(r: u32) -> Partition {
        Partition::new(vec![r])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `m_r`: number of parts equal to `r`.
    pub fn multiplicity(&self, r: u32) -> u32 {
        self.0.iter().filter(|&&p| p == r).count() as u32
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Union of parts.
    pub fn add(&self, o: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Partition::new(v)
    }

    /// Multiset difference; `None` unless `o` is contained in `self`.
    pub fn sub(&self, o: &Partition) -> Option<Partition> {
        let mut v = self.0.clone();
        for p in &o.0 {
            let i = v.iter().position(|x| x == p)?;
            v.remove(i);
        }
        Some(Partition(v))
    }

    /// Every part of `o` occurs in `self` at least as often.
    pub fn contains(&self, o: &Partition) -> bool {
        o.multiplicities().iter().all(|&(r, m)| self.multiplicity(r) >= m)
    }

    /// Multiset intersection.
    pub fn intersect(&self, o: &Partition) -> Partition {
        let mut v = Vec::new();
        for (r, m) in self.multiplicities() {
            for _ in 0..m.min(o.multiplicity(r)) {
                v.push(r);
            }
        }
        Partition::new(v)
    }

    /// All sub-multisets, in no particular order.
    pub fn submultisets(&self) -> Vec<Partition> {
        let ms = self.multiplicities();
        let mut out = vec![Vec::new()];
        for (r, m) in ms {
            let mut next = Vec::new();
            for base in &out {
                for k in 0..=m {
                    let mut v: Vec<u32> = base.clone();
                    v.extend(std::iter::repeat_n(r, k as usize));
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Partition::new).collect()
    }

    pub fn transpose(&self) -> Partition {
        let n = self.0.first().copied().unwrap_or(0);
        Partition((1..=n).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Boxes `(i, j)`, 1-based row and column, row by row.
    pub fn boxes(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &p) in self.0.iter().enumerate() {
            for j in 1..=p {
                out.push((i as u32 + 1, j));
            }
        }
        out
    }

    /// `lambda_i` with `lambda_i = 0` past the length (1-based).
    pub fn part(&self, i: u32) -> u32 {
        self.0.get(i as usize - 1).copied().unwrap_or(0)
    }

    /// Arm `lambda_i - j`; negative outside the diagram.
    pub fn arm(&self, i: u32, j: u32) -> i32 {
        self.part(i) as i32 - j as i32
    }

    /// Leg `lambda'_j - i`; negative outside the diagram.
    pub fn leg(&self, i: u32, j: u32) -> i32 {
        self.transpose().part(j) as i32 - i as i32
    }

    /// Dominance order; `None` for incomparable partitions or different sizes.
    pub fn dominance_cmp(&self, o: &Partition) -> Option<Ordering> {
        if self.size() != o.size() {
            return None;
        }
        let n = self.len().max(o.len());
        let (mut sa, mut sb) = (0i64, 0i64);
        let (mut ge, mut le) = (true, true);
        for k in 0..n {
            sa += *self.0.get(k).unwrap_or(&0) as i64;
            sb += *o.0.get(k).unwrap_or(&0) as i64;
            ge &= sa >= sb;
            le &= sa <= sb;
        }
        match (ge, le) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            _ => None,
        }
    }

    /// `prod_r m_r!`.
    pub fn mult_factorial(&self) -> BigInt {
        self.multiplicities().iter().map(|&(_, m)| factorial(m)).product()
    }

    /// Classical `z_lambda = prod_r r^{m_r} m_r!`.
    pub fn z_classical(&self) -> BigInt {
        let parts: BigInt = self.0.iter().map(|&p| BigInt::from(p)).product();
        parts * self.mult_factorial()
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

impl Ord for Partition {
    fn cmp(&self, o: &Partition) -> Ordering {
        self.size().cmp(&o.size()).then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, o: &Partition) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Partitions of `n` in reverse-lexicographic order: `(n)` first, `(1^n)` last.
pub fn enumerate(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All pairs `(a, b)` with `|a| + |b| = n`, larger `|a|` first.
pub fn pairs_of_weight(n: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for k in (0..=n).rev() {
        for a in enumerate(k) {
            for b in enumerate(n - k) {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

/// `prod_r C(m_r(lambda), m_r(mu))`, zero unless `mu` is contained in `lambda`.
pub fn p_binomial(lambda: &Partition, mu: &Partition) -> BigInt {
    if !lambda.contains(mu) {
        return BigInt::from(0);
    }
    lambda
        .multiplicities()
        .iter()
        .map(|&(r, m)| {
            let k = mu.multiplicity(r);
            factorial(m) / (factorial(k) * factorial(m - k))
        })
        .product()
}

/// `z_lambda(q, t) = z_lambda prod_i (1 - q^{lambda_i}) / (1 - t^{lambda_i})`.
pub fn z_factor(lambda: &Partition) -> RatFun {
    let mut r = RatFun::int(lambda.z_classical());
    for &p in lambda.parts() {
        let p = p as i32;
        r = &r * &(&(&RatFun::one() - &RatFun::qt(p, 0)) / &(&RatFun::one() - &RatFun::qt(0, p)));
    }
    r
}

/// `b_lambda = prod_boxes (1 - q^a t^{l+1}) / (1 - q^{a+1} t^l)`.
pub fn b_factor(lambda: &Partition) -> RatFun {
    let tr = lambda.transpose();
    let mut num = RatFun::one();
    let mut den = RatFun::one();
    for (i, j) in lambda.boxes() {
        let a = lambda.part(i) as i32 - j as i32;
        let l = tr.part(j) as i32 - i as i32;
        num = &num * &(&RatFun::one() - &RatFun::qt(a, l + 1));
        den = &den * &(&RatFun::one() - &RatFun::qt(a + 1, l));
    }
    &num / &den
}

impl fmt::Display for Partition {
    /// Parts joined by commas; `0` for the empty partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = CoreError;
    /// Accepts `2,1`, `(2,1)`, `[2, 1]`, and `0`, `()` or an empty string for the empty partition.
    fn from_str(s: &str) -> Result<Partition, CoreError> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']).trim();
        if t.is_empty() || t == "0" || t == "∅" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for x in t.split(',') {
            let p: u32 = x
                .trim()
                .parse()
                .map_err(|_| CoreError::InvalidInput(format!("bad partition '{s}'")))?;
            if p == 0 {
                return Err(CoreError::InvalidInput(format!("zero part in '{s}'")));
            }
            parts.push(p);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CoreError::InvalidInput(format!("parts of '{s}' are not non-increasing")));
        }
        Ok(Partition(parts))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Partition, D::Error> {
        let v: Vec<u32> = Vec::deserialize(d)?;
        if v.windows(2).any(|w| w[0] < w[1]) || v.contains(&0) {
            return Err(serde::de::Error::custom("parts must be positive and non-increasing"));
        }
        Ok(Partition(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn multiset_operations() {
        assert_eq!(p(&[2, 1]).add(&p(&[1])), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 1, 1]).sub(&p(&[1, 1])), Some(p(&[2])));
        assert_eq!(p(&[2, 1]).sub(&p(&[3])), None);
        assert_eq!(p(&[3, 2, 2, 1]).intersect(&p(&[2, 2, 2, 1])), p(&[2, 2, 1]));
        assert_eq!(p(&[2, 1, 1]).submultisets().len(), 6);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(p_binomial(&p(&[1, 1]), &p(&[1])), BigInt::from(2));
        assert_eq!(p_binomial(&p(&[2, 1]), &Partition::empty()), BigInt::from(1));
        assert_eq!(p_binomial(&p(&[2, 1]), &p(&[3])), BigInt::from(0));
    }

    #[test]
    fn enumeration_counts_and_order() {
        let counts: Vec<usize> = (0..=8).map(|n| enumerate(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        let four = enumerate(4);
        assert_eq!(four[0], p(&[4]));
        assert_eq!(four[2], p(&[2, 2]));
        assert_eq!(four[4], p(&[1, 1, 1, 1]));
        let mut sorted = four.clone();
        sorted.sort();
        assert_eq!(sorted, four);
    }

    #[test]
    fn b_factor_of_single_box() {
        let b1 = b_factor(&p(&[1]));
        let expect: RatFun = "(1 - t)/(1 - q)".parse().unwrap();
        assert_eq!(b1, expect);
        assert!(b_factor(&Partition::empty()).is_one());
    }

    #[test]
    fn z_factor_examples() {
        let z11 = z_factor(&p(&[1, 1]));
        let expect: RatFun = "2*(1 - q)^2/(1 - t)^2".parse().unwrap();
        assert_eq!(z11, expect);
    }

    #[test]
    fn arms_and_legs() {
        let l = p(&[3, 1]);
        assert_eq!((l.arm(1, 1), l.leg(1, 1)), (2, 1));
        assert_eq!((l.arm(2, 1), l.leg(2, 1)), (0, 0));
        // outside the diagram both may be negative
        assert_eq!((l.arm(2, 3), l.leg(2, 3)), (-2, -1));
    }

    #[test]
    fn dominance() {
        assert_eq!(p(&[3, 1]).dominance_cmp(&p(&[2, 2])), Some(Ordering::Greater));
        assert_eq!(p(&[3, 1, 1, 1]).dominance_cmp(&p(&[2, 2, 2])), None);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("2,1".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert_eq!(p(&[2, 1, 1]).to_string(), "2,1,1");
    }
}
