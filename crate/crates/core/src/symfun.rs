//! Symmetric functions of fixed degree over Q(q, t): power-sum and monomial
//! bases, the (q, t) scalar product, and Macdonald polynomials `P_lambda`
//! obtained by Gram-Schmidt along a linear extension of dominance.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use toroidal_exact::{BigInt, BigRational, Mon, Poly, RatFun, Var};

use crate::error::{CoreError, Result};
use crate::partitions::{enumerate, z_factor, Partition};

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "p")]
    Power,
    #[serde(rename = "m")]
    Monomial,
    #[serde(rename = "P")]
    Macdonald,
}

/// A homogeneous symmetric function as coefficients in one basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunExpansion {
    pub degree: u32,
    pub basis: Basis,
    pub coeffs: BTreeMap<Partition, RatFun>,
}

impl SymFunExpansion {
    pub fn zero(degree: u32, basis: Basis) -> Self {
        SymFunExpansion { degree, basis, coeffs: BTreeMap::new() }
    }

    pub fn basis_element(lambda: &Partition, basis: Basis) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(lambda.clone(), RatFun::one());
        SymFunExpansion { degree: lambda.size(), basis, coeffs }
    }

    pub fn coeff(&self, mu: &Partition) -> RatFun {
        self.coeffs.get(mu).cloned().unwrap_or_default()
    }

    fn dense(&self, parts: &[Partition]) -> Vec<RatFun> {
        parts.iter().map(|m| self.coeff(m)).collect()
    }

    fn from_dense(degree: u32, basis: Basis, parts: &[Partition], v: Vec<RatFun>) -> Self {
        let coeffs = parts.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()).collect();
        SymFunExpansion { degree, basis, coeffs }
    }

    /// JSON form `{"lambda": [...], "basis": "p", "coeffs": {"2,1": "..."}}`.
    pub fn to_json(&self, lambda: Option<&Partition>) -> serde_json::Value {
        let coeffs: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.to_string())))
            .collect();
        serde_json::json!({
            "lambda": lambda.map(|l| l.parts().to_vec()),
            "degree": self.degree,
            "basis": self.basis,
            "coeffs": coeffs,
        })
    }
}

/// Per-degree data: the change of basis between `p` and `m`, and the
/// power-sum coefficients of every `P_lambda`.
pub struct DegreeTable {
    pub degree: u32,
    /// Partitions of the degree in reverse-lex order.
    pub parts: Vec<Partition>,
    /// `p_rho = sum_mu p_to_m[rho][mu] m_mu`.
    pub p_to_m: Vec<Vec<BigInt>>,
    /// `m_mu = sum_rho m_to_p[mu][rho] p_rho`.
    pub m_to_p: Vec<Vec<BigRational>>,
    /// `P_lambda = sum_rho g[lambda][rho] p_rho`.
    pub g: Vec<Vec<RatFun>>,
    index: HashMap<Partition, usize>,
}

impl DegreeTable {
    pub fn index_of(&self, mu: &Partition) -> usize {
        self.index[mu]
    }

    pub fn g(&self, lambda: &Partition, rho: &Partition) -> &RatFun {
        &self.g[self.index[lambda]][self.index[rho]]
    }

    fn build(n: u32) -> DegreeTable {
        let parts = enumerate(n);
        let index: HashMap<Partition, usize> = parts.iter().cloned().zip(0..).collect();
        let p_to_m = power_to_monomial(&parts);
        let m_to_p = invert_rational(&p_to_m);
        let z: Vec<RatFun> = parts.iter().map(z_factor).collect();
        let k = parts.len();
        let dot = |a: &[RatFun], b: &[RatFun]| -> RatFun {
            (0..k).filter(|&i| !a[i].is_zero() && !b[i].is_zero()).map(|i| &(&a[i] * &b[i]) * &z[i]).sum()
        };
        // from the bottom of dominance upward
        let mut g: Vec<Vec<RatFun>> = vec![Vec::new(); k];
        let mut norms: Vec<RatFun> = vec![RatFun::zero(); k];
        for i in (0..k).rev() {
            let mut v: Vec<RatFun> = m_to_p[i].iter().map(RatFun::from_rational).collect();
            for j in i + 1..k {
                let c = &dot(&v, &g[j]) / &norms[j];
                if c.is_zero() {
                    continue;
                }
                for r in 0..k {
                    if !g[j][r].is_zero() {
                        v[r] = &v[r] - &(&c * &g[j][r]);
                    }
                }
            }
            norms[i] = dot(&v, &v);
            g[i] = v;
        }
        DegreeTable { degree: n, parts, p_to_m, m_to_p, g, index }
    }

    fn from_g(n: u32, g: Vec<Vec<RatFun>>) -> DegreeTable {
        let parts = enumerate(n);
        let index: HashMap<Partition, usize> = parts.iter().cloned().zip(0..).collect();
        let p_to_m = power_to_monomial(&parts);
        let m_to_p = invert_rational(&p_to_m);
        DegreeTable { degree: n, parts, p_to_m, m_to_p, g, index }
    }
}

/// Coefficient of `x^mu` in `p_rho`: the number of maps from parts of `rho`
/// to rows of `mu` whose fibres sum to the rows.
fn power_to_monomial(parts: &[Partition]) -> Vec<Vec<BigInt>> {
    fn count(rho: &[u32], slots: &mut [u32]) -> u64 {
        match rho.split_first() {
            None => slots.iter().all(|&s| s == 0) as u64,
            Some((&r, rest)) => {
                let mut total = 0;
                for i in 0..slots.len() {
                    if slots[i] >= r {
                        slots[i] -= r;
                        total += count(rest, slots);
                        slots[i] += r;
                    }
                }
                total
            }
        }
    }
    parts
        .iter()
        .map(|rho| {
            parts
                .iter()
                .map(|mu| {
                    let mut slots = mu.parts().to_vec();
                    BigInt::from(count(rho.parts(), &mut slots))
                })
                .collect()
        })
        .collect()
}

fn invert_rational(a: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero()).expect("singular change of basis");
        m.swap(c, piv);
        let inv = BigRational::one() / &m[c][c];
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[c].clone();
                for (x, p) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * p;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<DegreeTable>>> {
    static C: OnceLock<RwLock<HashMap<u32, Arc<DegreeTable>>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The cached table for degree `n`, computed on first use.
pub fn degree_table(n: u32) -> Arc<DegreeTable> {
    if let Some(t) = cache().read().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(DegreeTable::build(n));
    cache().write().unwrap().entry(n).or_insert(t).clone()
}

/// `g_{lambda, rho}`: the coefficient of `p_rho` in `P_lambda`.
pub fn g_coeff(lambda: &Partition, rho: &Partition) -> RatFun {
    if lambda.size() != rho.size() {
        return RatFun::zero();
    }
    degree_table(lambda.size()).g(lambda, rho).clone()
}

/// `P_lambda` in the power-sum basis.
pub fn macdonald_p(lambda: &Partition) -> SymFunExpansion {
    let t = degree_table(lambda.size());
    let i = t.index_of(lambda);
    SymFunExpansion::from_dense(lambda.size(), Basis::Power, &t.parts, t.g[i].clone())
}

fn to_power(f: &SymFunExpansion, t: &DegreeTable) -> Vec<RatFun> {
    let k = t.parts.len();
    let src = f.dense(&t.parts);
    let mut out = vec![RatFun::zero(); k];
    for (i, c) in src.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for r in 0..k {
            let m = match f.basis {
                Basis::Power => {
                    if i == r {
                        RatFun::one()
                    } else {
                        continue;
                    }
                }
                Basis::Monomial => RatFun::from_rational(&t.m_to_p[i][r]),
                Basis::Macdonald => t.g[i][r].clone(),
            };
            if !m.is_zero() {
                out[r] = &out[r] + &(c * &m);
            }
        }
    }
    out
}

/// Change basis. Conversion into the Macdonald basis uses orthogonality.
pub fn convert_basis(f: &SymFunExpansion, target: Basis) -> SymFunExpansion {
    let t = degree_table(f.degree);
    let k = t.parts.len();
    let p = to_power(f, &t);
    let out = match target {
        Basis::Power => p,
        Basis::Monomial => (0..k)
            .map(|mu| {
                (0..k)
                    .filter(|&r| !p[r].is_zero() && !t.p_to_m[r][mu].is_zero())
                    .map(|r| p[r].scale_int(&t.p_to_m[r][mu]))
                    .sum()
            })
            .collect(),
        Basis::Macdonald => {
            let pf = SymFunExpansion::from_dense(f.degree, Basis::Power, &t.parts, p);
            t.parts
                .iter()
                .map(|l| {
                    let pl = macdonald_p(l);
                    &scalar_product(&pf, &pl) / &scalar_product(&pl, &pl)
                })
                .collect()
        }
    };
    SymFunExpansion::from_dense(f.degree, target, &t.parts, out)
}

/// `<p_lambda, p_mu> = delta z_lambda(q, t)`, extended bilinearly.
pub fn scalar_product(f: &SymFunExpansion, g: &SymFunExpansion) -> RatFun {
    if f.degree != g.degree {
        return RatFun::zero();
    }
    let t = degree_table(f.degree);
    let a = to_power(f, &t);
    let b = to_power(g, &t);
    t.parts
        .iter()
        .enumerate()
        .filter(|(i, _)| !a[*i].is_zero() && !b[*i].is_zero())
        .map(|(i, rho)| &(&a[i] * &b[i]) * &z_factor(rho))
        .sum()
}

// ---------------------------------------------------------------------------
// independent checks

/// `m_mu(z_1..z_n)` as a polynomial; zero when `l(mu) > n`.
fn monomial_symmetric(mu: &Partition, n: usize) -> Poly {
    if mu.len() > n {
        return Poly::zero();
    }
    let mut e: Vec<u32> = mu.parts().to_vec();
    e.resize(n, 0);
    e.sort_unstable();
    let mut terms = Vec::new();
    loop {
        let mon = Mon::from_pairs(&(0..n).map(|i| (Var::z(i + 1), e[i] as i32)).collect::<Vec<_>>());
        terms.push((mon, BigInt::one()));
        if !next_permutation(&mut e) {
            break;
        }
    }
    Poly::from_terms(terms)
}

fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Outcome of the q-difference operator check.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub lambda: Partition,
    pub nvars: usize,
    pub eigenvalue: RatFun,
    pub holds: bool,
}

/// Check `D^1 P_lambda = (sum_i q^{lambda_i} t^{n-i}) P_lambda` in `n`
/// variables, with
/// `D^1 = sum_i prod_{j != i} (t z_i - z_j)/(z_i - z_j) T_{q, z_i}`.
/// Both sides are multiplied by the Vandermonde determinant and by a common
/// denominator of the coefficients, and compared as integer polynomials.
pub fn macdonald_oracle_check(lambda: &Partition, nvars: usize) -> Result<OracleReport> {
    if nvars == 0 || nvars > Var::MAX_Z {
        return Err(CoreError::InvalidInput(format!("nvars must be in 1..={}", Var::MAX_Z)));
    }
    let n = nvars;
    let eigen: RatFun = (1..=n)
        .map(|i| RatFun::qt(lambda.part(i as u32) as i32, (n - i) as i32))
        .sum();
    let pm = convert_basis(&macdonald_p(lambda), Basis::Monomial);
    let mut den = Poly::one();
    for c in pm.coeffs.values() {
        let d = c.denom();
        let g = toroidal_exact::gcd(&den, d);
        den = &den * &d.div_exact(&g).unwrap();
    }
    let mut f = Poly::zero();
    for (mu, c) in &pm.coeffs {
        let scale = den.div_exact(c.denom()).unwrap();
        f = &f + &(&(c.numer() * &scale) * &monomial_symmetric(mu, n));
    }
    if lambda.len() > n {
        let holds = f.is_zero();
        return Ok(OracleReport { lambda: lambda.clone(), nvars, eigenvalue: eigen, holds });
    }
    let zs: Vec<Poly> = (1..=n).map(|i| Poly::var(Var::z(i))).collect();
    let t = Poly::monomial(Mon::var_pow(Var::TH, 2), 1);
    let vander = |skip: Option<usize>| -> Poly {
        let mut v = Poly::one();
        for a in 0..n {
            for b in a + 1..n {
                if Some(a) == skip || Some(b) == skip {
                    continue;
                }
                v = &v * &(&zs[a] - &zs[b]);
            }
        }
        v
    };
    let mut lhs = Poly::zero();
    for i in 0..n {
        let mut a = vander(Some(i));
        for j in 0..n {
            if j != i {
                a = &a * &(&(&t * &zs[i]) - &zs[j]);
            }
        }
        let shifted = Poly::from_terms(f.terms().iter().map(|(m, c)| {
            let e = m.exp(Var::z(i + 1));
            (m.mul(&Mon::var_pow(Var::QH, 2 * e)), c.clone())
        }));
        let term = &a * &shifted;
        lhs = if i % 2 == 0 { &lhs + &term } else { &lhs - &term };
    }
    let ep = eigen.numer().clone();
    let rhs = &(&ep * &vander(None)) * &f;
    Ok(OracleReport { lambda: lambda.clone(), nvars, eigenvalue: eigen, holds: lhs == rhs })
}

/// Power-sum expansions with rational coefficients, used for Jacobi-Trudi.
type PExpr = BTreeMap<Partition, BigRational>;

fn pexpr_mul(a: &PExpr, b: &PExpr) -> PExpr {
    let mut out = PExpr::new();
    for (x, c) in a {
        for (y, d) in b {
            *out.entry(x.add(y)).or_insert_with(BigRational::zero) += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn complete_h(k: i64) -> PExpr {
    let mut out = PExpr::new();
    if k < 0 {
        return out;
    }
    for rho in enumerate(k as u32) {
        out.insert(rho.clone(), BigRational::new(BigInt::one(), rho.z_classical()));
    }
    out
}

/// Schur function `s_lambda = det(h_{lambda_i - i + j})` in the power-sum basis.
pub fn schur_jacobi_trudi(lambda: &Partition) -> BTreeMap<Partition, BigRational> {
    let l = lambda.len();
    let mut total = PExpr::new();
    let mut perm: Vec<usize> = (0..l).collect();
    loop {
        let mut term = PExpr::new();
        term.insert(Partition::empty(), BigRational::one());
        for i in 0..l {
            let k = lambda.parts()[i] as i64 - i as i64 + perm[i] as i64;
            term = pexpr_mul(&term, &complete_h(k));
            if term.is_empty() {
                break;
            }
        }
        let sign = permutation_sign(&perm);
        for (k, c) in term {
            let e = total.entry(k).or_insert_with(BigRational::zero);
            if sign > 0 {
                *e += c;
            } else {
                *e -= c;
            }
        }
        if !next_perm_usize(&mut perm) {
            break;
        }
    }
    total.retain(|_, c| !c.is_zero());
    total
}

fn permutation_sign(p: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

fn next_perm_usize(a: &mut [usize]) -> bool {
    let mut v: Vec<u32> = a.iter().map(|&x| x as u32).collect();
    let r = next_permutation(&mut v);
    for (x, y) in a.iter_mut().zip(v) {
        *x = y as usize;
    }
    r
}

/// `P_lambda` at `q = t` must equal the Schur function.
pub fn schur_check(lambda: &Partition) -> bool {
    let p = macdonald_p(lambda);
    let s = schur_jacobi_trudi(lambda);
    let at_q_eq_t = |c: &RatFun| {
        c.substitute_mon(&[(Var::QH, Mon::var(Var::TH))]).ok().and_then(|r| r.as_rational())
    };
    let mut keys: Vec<&Partition> = p.coeffs.keys().chain(s.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().all(|k| {
        let lhs = at_q_eq_t(&p.coeff(k));
        let rhs = s.get(k).cloned().unwrap_or_else(BigRational::zero);
        lhs == Some(rhs)
    })
}

// ---------------------------------------------------------------------------
// on-disk memo of the g coefficients

#[derive(Serialize, Deserialize)]
struct GFile {
    degree: u32,
    rows: BTreeMap<String, BTreeMap<String, String>>,
}

/// Write the table for degree `n` into `dir/g_<n>.json`.
pub fn save_table(dir: &Path, n: u32) -> Result<()> {
    let t = degree_table(n);
    let rows = t
        .parts
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let row = t
                .parts
                .iter()
                .enumerate()
                .filter(|(j, _)| !t.g[i][*j].is_zero())
                .map(|(j, r)| (r.to_string(), t.g[i][j].to_string()))
                .collect();
            (l.to_string(), row)
        })
        .collect();
    let file = GFile { degree: n, rows };
    std::fs::create_dir_all(dir).map_err(|e| CoreError::Cache(e.to_string()))?;
    let s = serde_json::to_string_pretty(&file).map_err(|e| CoreError::Cache(e.to_string()))?;
    std::fs::write(dir.join(format!("g_{n}.json")), s).map_err(|e| CoreError::Cache(e.to_string()))
}

/// Load `dir/g_<n>.json` into the cache if present; returns whether it was.
pub fn load_table(dir: &Path, n: u32) -> Result<bool> {
    let path = dir.join(format!("g_{n}.json"));
    if !path.exists() {
        return Ok(false);
    }
    let s = std::fs::read_to_string(&path).map_err(|e| CoreError::Cache(e.to_string()))?;
    let file: GFile = serde_json::from_str(&s).map_err(|e| CoreError::Cache(e.to_string()))?;
    if file.degree != n {
        return Err(CoreError::Cache(format!("{} holds degree {}", path.display(), file.degree)));
    }
    let parts = enumerate(n);
    let mut g = vec![vec![RatFun::zero(); parts.len()]; parts.len()];
    for (i, l) in parts.iter().enumerate() {
        let row = file.rows.get(&l.to_string()).ok_or_else(|| CoreError::Cache(format!("missing row {l}")))?;
        for (j, r) in parts.iter().enumerate() {
            if let Some(v) = row.get(&r.to_string()) {
                g[i][j] = v.parse().map_err(|e: toroidal_exact::ExactError| CoreError::Cache(e.to_string()))?;
            }
        }
    }
    let t = Arc::new(DegreeTable::from_g(n, g));
    cache().write().unwrap().entry(n).or_insert(t);
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn p_to_m_degree_two() {
        let t = degree_table(2);
        // p_2 = m_2, p_11 = m_2 + 2 m_11
        assert_eq!(t.p_to_m, vec![vec![BigInt::from(1), BigInt::from(0)], vec![BigInt::from(1), BigInt::from(2)]]);
    }

    #[test]
    fn p1_and_p2_examples() {
        let p1 = macdonald_p(&p(&[1]));
        assert!(p1.coeff(&p(&[1])).is_one());
        let p2 = macdonald_p(&p(&[2]));
        let c2: RatFun = "(1 - q)*(1 + t)/(2*(1 - q*t))".parse().unwrap();
        let c11: RatFun = "(1 + q)*(1 - t)/(2*(1 - q*t))".parse().unwrap();
        assert_eq!(p2.coeff(&p(&[2])), c2);
        assert_eq!(p2.coeff(&p(&[1, 1])), c11);
        // P_{11} = e_2 = (p_1^2 - p_2)/2
        let p11 = macdonald_p(&p(&[1, 1]));
        assert_eq!(p11.coeff(&p(&[2])), RatFun::rational(-1, 2));
        assert_eq!(p11.coeff(&p(&[1, 1])), RatFun::rational(1, 2));
    }

    #[test]
    fn unitriangular_in_monomials() {
        for n in 1..=4 {
            for l in enumerate(n) {
                let m = convert_basis(&macdonald_p(&l), Basis::Monomial);
                assert!(m.coeff(&l).is_one());
                for mu in m.coeffs.keys() {
                    assert!(matches!(mu.dominance_cmp(&l), Some(std::cmp::Ordering::Less | std::cmp::Ordering::Equal)));
                }
            }
        }
    }

    #[test]
    fn oracle_small() {
        let r = macdonald_oracle_check(&p(&[1]), 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.eigenvalue, "q*t + 1".parse().unwrap());
        assert!(macdonald_oracle_check(&p(&[2, 1]), 3).unwrap().holds);
    }

    #[test]
    fn schur_specialization() {
        for n in 1..=4 {
            for l in enumerate(n) {
                assert!(schur_check(&l), "{l}");
            }
        }
    }

    #[test]
    fn basis_round_trip() {
        let f = macdonald_p(&p(&[2, 1]));
        let back = convert_basis(&convert_basis(&f, Basis::Monomial), Basis::Power);
        assert_eq!(back, f);
        let inp = convert_basis(&f, Basis::Macdonald);
        assert_eq!(inp.coeffs.len(), 1);
        assert!(inp.coeff(&p(&[2, 1])).is_one());
    }
}
