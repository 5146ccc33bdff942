//! Matrix elements of the normalized R-matrix on the tensor square of the
//! Fock module, in the basis `|a_alpha> (x) |a_beta>`, together with the
//! intermediate quantities `X`, `C~`, `K`, `R-bar` of the second route.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};
use toroidal_exact::{rf_series, rf_series_at_zero, BigInt, Direction, Mon, RatFun, USeries, Var};

use crate::error::{CoreError, Result};
use crate::partitions::{b_factor, enumerate, p_binomial, pairs_of_weight, z_factor, Partition};
use crate::symfun::degree_table;

pub type Quad = (Partition, Partition, Partition, Partition);

fn sign(len: usize) -> i64 {
    if len.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(q/t)^{k/2}`.
fn s_pow(k: i32) -> RatFun {
    RatFun::qt_half(k, -k)
}

fn u_mon(qe: i32, te: i32, ue: i32) -> RatFun {
    RatFun::monomial(Mon::from_pairs(&[(Var::QH, 2 * qe), (Var::TH, 2 * te), (Var::U, ue)]))
}

fn bin(a: &Partition, b: &Partition) -> BigInt {
    p_binomial(a, b)
}

/// `(1 - q t^-1) / ((1 - q)(1 - t^-1))`.
pub fn alpha() -> RatFun {
    let one = RatFun::one();
    &(&one - &RatFun::qt(1, -1)) / &(&(&one - &RatFun::q()) * &(&one - &RatFun::qt(0, -1)))
}

/// The box product `f_lambda / N` (or `f*_lambda / N*` with `star`), rational in `u`.
pub fn f_eigen(lambda: &Partition, star: bool) -> RatFun {
    let one = RatFun::one();
    let mut r = RatFun::one();
    for (i, j) in lambda.boxes() {
        let (i, j) = (i as i32, j as i32);
        let (num, den) = if star {
            (u_mon(1 - j, i - 1, 1), u_mon(-j, i, 1))
        } else {
            (u_mon(j - 1, 1 - i, -1), u_mon(j, -i, -1))
        };
        r = &r * &(&(&one - &num) / &(&one - &den));
    }
    r
}

/// The exponent coefficient `c_r` of `N = exp(sum c_r w^r)`.
fn n_exponent(r: i32, star: bool) -> RatFun {
    let e = if star { -r } else { r };
    let one = RatFun::one();
    let num = &one - &RatFun::qt(e, -e);
    let den = &(&one - &RatFun::qt(e, 0)) * &(&one - &RatFun::qt(0, -e));
    &(&num / &den) * &RatFun::rational(1, r as i64)
}

fn direction(star: bool) -> Direction {
    if star {
        Direction::U
    } else {
        Direction::InvU
    }
}

/// `N(u)` in powers of `u^-1`, or `N*(u)` in powers of `u`, through order `m`.
pub fn n_series(star: bool, m: u32) -> USeries {
    let m = m as i32;
    let mut c = vec![RatFun::zero()];
    c.extend((1..=m).map(|r| n_exponent(r, star)));
    USeries::from_coeffs(direction(star), 0, m, c).exp().expect("exponent has positive valuation")
}

fn expand(f: &RatFun, star: bool, m: u32) -> Result<USeries> {
    let s = if star { rf_series_at_zero(f, m as i32) } else { rf_series(f, m as i32) };
    Ok(s?)
}

/// The unnormalized eigenvalue `f_lambda` (or `f*_lambda`) as a truncated series.
pub fn f_eigen_series(lambda: &Partition, star: bool, m: u32) -> Result<USeries> {
    Ok(expand(&f_eigen(lambda, star), star, m)?.mul(&n_series(star, m)))
}

/// `f_lambda` assembled from its exponential form, with the eigenvalue of
/// `p_r` on `P_lambda` written as a sum over boxes.
pub fn f_exponential_series(lambda: &Partition, m: u32) -> Result<USeries> {
    let one = RatFun::one();
    let mut c = vec![RatFun::zero()];
    for r in 1..=m as i32 {
        let mut boxes = RatFun::zero();
        for (i, j) in lambda.boxes() {
            boxes += &RatFun::qt(j as i32 * r, -(i as i32) * r);
        }
        let vac = &RatFun::qt(0, -r) / &(&(&one - &RatFun::qt(0, -r)) * &(&one - &RatFun::qt(r, 0)));
        let eps = &(-&(&RatFun::qt(-r, 0) * &boxes)) + &vac;
        let pre = &(&one - &RatFun::qt(r, -r)) * &RatFun::qt(0, r);
        c.push(&(&pre * &eps) * &RatFun::rational(1, r as i64));
    }
    Ok(USeries::from_coeffs(Direction::InvU, 0, m as i32, c).exp()?)
}

fn kernel_cache() -> &'static RwLock<HashMap<(Partition, Partition), RatFun>> {
    static C: OnceLock<RwLock<HashMap<(Partition, Partition), RatFun>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `W(mu, nu) = sum_{lambda |- |mu|} b_lambda (f_lambda/N) g_{lambda,mu} g_{lambda,nu}`.
pub fn kernel(mu: &Partition, nu: &Partition) -> RatFun {
    if mu.size() != nu.size() {
        return RatFun::zero();
    }
    let key = if mu <= nu { (mu.clone(), nu.clone()) } else { (nu.clone(), mu.clone()) };
    if let Some(w) = kernel_cache().read().unwrap().get(&key) {
        return w.clone();
    }
    let tab = degree_table(mu.size());
    let mut w = RatFun::zero();
    for lam in &tab.parts {
        let gg = tab.g(lam, mu) * tab.g(lam, nu);
        if gg.is_zero() {
            continue;
        }
        w += &(&(&b_factor(lam) * &f_eigen(lam, false)) * &gg);
    }
    kernel_cache().write().unwrap().entry(key).or_insert(w).clone()
}

/// `X_{mu,nu} / N`.
pub fn x_coeff(mu: &Partition, nu: &Partition) -> RatFun {
    if mu.size() != nu.size() {
        return RatFun::zero();
    }
    let mut r = RatFun::zero();
    for a in mu.intersect(nu).submultisets() {
        let w = kernel(&mu.sub(&a).unwrap(), &nu.sub(&a).unwrap());
        r += &(&w * &(&RatFun::int(sign(a.len())) / &z_factor(&a)));
    }
    r
}

/// The unnormalized `X_{mu,nu}` as a series in `u^-1`.
pub fn x_coeff_series(mu: &Partition, nu: &Partition, m: u32) -> Result<USeries> {
    Ok(expand(&x_coeff(mu, nu), false, m)?.mul(&n_series(false, m)))
}

/// `C_{alpha,beta}^{gamma,delta}(sigma)`.
pub fn c_coeff(al: &Partition, be: &Partition, ga: &Partition, de: &Partition, si: &Partition) -> Result<RatFun> {
    let a = al.add(be);
    let b = ga.add(de);
    if !a.contains(si) || !b.contains(si) {
        return Err(CoreError::InvalidInput(format!("sigma {si} not contained in both {a} and {b}")));
    }
    let a_si = a.sub(si).unwrap();
    let mut sum = RatFun::zero();
    for k in be.intersect(si).submultisets() {
        let (Some(sk), Some(bk)) = (si.sub(&k), be.sub(&k)) else { continue };
        let n = bin(ga, &k) * bin(de, &sk) * bin(&a_si, &bk);
        if n.is_zero() {
            continue;
        }
        let kk = k.size() as i32;
        sum += &RatFun::qt(-kk, kk).scale_int(&n);
    }
    let pre = &s_pow((be.size() + ga.size()) as i32) * &z_factor(&b.sub(si).unwrap());
    Ok((&pre * &sum).scale_int(&sign(al.add(ga).add(si).len()).into()))
}

/// `C~_{alpha,beta}^{gamma,delta}(mu)`; zero when `mu` is not inside `alpha + beta`.
pub fn c_tilde(al: &Partition, be: &Partition, ga: &Partition, de: &Partition, mu: &Partition) -> RatFun {
    let Some(am) = al.add(be).sub(mu) else { return RatFun::zero() };
    let mut sum = RatFun::zero();
    for si in am.submultisets() {
        let Some(bs) = be.sub(&si) else { continue };
        let Some(x) = mu.sub(&bs) else { continue };
        let n = bin(&am, &si) * bin(ga, &x) * bin(de, &bs);
        if n.is_zero() {
            continue;
        }
        let e = (si.size() + mu.size()) as i32;
        sum += &RatFun::qt(e, -e).scale_int(&n);
    }
    let b = be.size() as i32;
    let pre = &s_pow(-((al.size() + ga.size()) as i32)) * &RatFun::qt(-b, b);
    (&pre * &sum).scale_int(&sign(al.add(ga).len()).into())
}

/// `K_{alpha,beta}^{gamma,delta}`.
pub fn k_elem(al: &Partition, be: &Partition, ga: &Partition, de: &Partition) -> RatFun {
    if al.add(be) != ga.add(de) {
        return RatFun::zero();
    }
    let Some(d) = ga.sub(al) else { return RatFun::zero() };
    let one = RatFun::one();
    let mut r = s_pow((al.size() + de.size()) as i32).scale_int(&bin(ga, al));
    for &p in d.parts() {
        let p = p as i32;
        r = &r * &(&one - &RatFun::qt(p, -p));
    }
    r
}

/// `R-bar_{alpha,beta}^{gamma,delta} / N`.
pub fn rbar(al: &Partition, be: &Partition, ga: &Partition, de: &Partition) -> RatFun {
    let a = al.add(be);
    let b = ga.add(de);
    if a.size() != b.size() {
        return RatFun::zero();
    }
    let mut r = RatFun::zero();
    for mu in a.intersect(&b).submultisets() {
        let ct = c_tilde(al, be, ga, de, &mu);
        if ct.is_zero() {
            continue;
        }
        let x = x_coeff(&a.sub(&mu).unwrap(), &b.sub(&mu).unwrap());
        r += &(&(&z_factor(&b.sub(&mu).unwrap()) * &x) * &ct);
    }
    r
}

/// Unnormalized `R-bar` as a series in `u^-1`, assembled from unnormalized `X`.
pub fn rbar_series(al: &Partition, be: &Partition, ga: &Partition, de: &Partition, m: u32) -> Result<USeries> {
    let a = al.add(be);
    let b = ga.add(de);
    let mut r = USeries::zero(Direction::InvU, m as i32);
    if a.size() != b.size() {
        return Ok(r);
    }
    for mu in a.intersect(&b).submultisets() {
        let ct = c_tilde(al, be, ga, de, &mu);
        if ct.is_zero() {
            continue;
        }
        let x = x_coeff_series(&a.sub(&mu).unwrap(), &b.sub(&mu).unwrap(), m)?;
        r = r.add(&x.scale(&(&z_factor(&b.sub(&mu).unwrap()) * &ct)));
    }
    Ok(r)
}

/// `R_{alpha,beta}^{gamma,delta}(u)` from the closed formula.
pub fn r_elem(al: &Partition, be: &Partition, ga: &Partition, de: &Partition) -> RatFun {
    let a = al.add(be);
    let b = ga.add(de);
    if a.size() != b.size() {
        return RatFun::zero();
    }
    let mut r = RatFun::zero();
    for si in a.intersect(&b).submultisets() {
        let c = c_coeff(al, be, ga, de, &si).expect("sigma lies in the intersection");
        if c.is_zero() {
            continue;
        }
        r += &(&kernel(&a.sub(&si).unwrap(), &b.sub(&si).unwrap()) * &c);
    }
    r
}

/// `R = N^-1 R-bar K`, contracted over the intermediate pair.
pub fn r_elem_via_rbar(al: &Partition, be: &Partition, ga: &Partition, de: &Partition) -> RatFun {
    let n = al.size() + be.size();
    if n != ga.size() + de.size() {
        return RatFun::zero();
    }
    let target = ga.add(de);
    let mut r = RatFun::zero();
    for si in target.submultisets() {
        let rho = target.sub(&si).unwrap();
        let k = k_elem(&si, &rho, ga, de);
        if k.is_zero() {
            continue;
        }
        r += &(&rbar(al, be, &si, &rho) * &k);
    }
    r
}

/// All entries of the weight-`n` block.
#[derive(Clone, Debug)]
pub struct RBlock {
    pub weight: u32,
    pub index_pairs: Vec<(Partition, Partition)>,
    pub entries: BTreeMap<Quad, RatFun>,
}

impl RBlock {
    pub fn get(&self, al: &Partition, be: &Partition, ga: &Partition, de: &Partition) -> RatFun {
        self.entries
            .get(&(al.clone(), be.clone(), ga.clone(), de.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn to_json(&self) -> Value {
        let pairs: Vec<Value> = self.index_pairs.iter().map(|(a, b)| json!([a, b])).collect();
        let entries: serde_json::Map<String, Value> = self
            .entries
            .iter()
            .map(|((a, b, c, d), f)| (format!("<{a}|{b}>-><{c}|{d}>"), Value::String(f.to_string())))
            .collect();
        json!({ "weight": self.weight, "index_pairs": pairs, "entries": entries })
    }
}

pub fn r_block(n: u32) -> RBlock {
    let index_pairs = pairs_of_weight(n);
    let quads: Vec<Quad> = index_pairs
        .iter()
        .flat_map(|(a, b)| index_pairs.iter().map(move |(c, d)| (a.clone(), b.clone(), c.clone(), d.clone())))
        .collect();
    for d in 0..=n {
        for mu in enumerate(d) {
            for nu in enumerate(d) {
                kernel(&mu, &nu);
            }
        }
    }
    let entries = quads
        .into_par_iter()
        .map(|q| {
            let f = r_elem(&q.0, &q.1, &q.2, &q.3);
            (q, f)
        })
        .collect();
    RBlock { weight: n, index_pairs, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use toroidal_exact::rf_parse;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    fn e() -> Partition {
        Partition::empty()
    }

    #[test]
    fn eigen_products() {
        assert!(f_eigen(&e(), false).is_one());
        assert_eq!(f_eigen(&p(&[1]), false), rf_parse("(1 - u^-1)/(1 - u^-1*q*t^-1)").unwrap());
        assert_eq!(
            f_eigen(&p(&[1, 1]), false),
            rf_parse("(1 - u^-1)*(1 - u^-1*t^-1)/((1 - u^-1*q*t^-1)*(1 - u^-1*q*t^-2))").unwrap()
        );
    }

    #[test]
    fn vacuum_series_start() {
        let n = n_series(false, 2);
        assert!(n.coeff(0).is_one());
        assert_eq!(n.coeff(1), alpha());
        let c1 = n_exponent(1, false);
        let c2 = n_exponent(2, false);
        assert_eq!(n.coeff(2), &(&(&c1 * &c1) * &RatFun::rational(1, 2)) + &c2);
        assert_eq!(n_exponent(2, false).scale_int(&2.into()), rf_parse("(1 - q^2*t^-2)/((1 - q^2)*(1 - t^-2))").unwrap());
    }

    #[test]
    fn x_examples() {
        assert!(x_coeff(&e(), &e()).is_one());
        assert!(x_coeff(&p(&[1]), &p(&[2])).is_zero());
        let expect = rf_parse("(1 - t)/(1 - q)*(1 - u^-1)/(1 - u^-1*q*t^-1) - (1 - t)/(1 - q)").unwrap();
        assert_eq!(x_coeff(&p(&[1]), &p(&[1])), expect);
    }

    #[test]
    fn c_and_k_examples() {
        assert!(c_coeff(&e(), &e(), &e(), &e(), &e()).unwrap().is_one());
        assert_eq!(c_coeff(&p(&[1]), &e(), &e(), &p(&[1]), &e()).unwrap(), -z_factor(&p(&[1])));
        assert!(c_coeff(&e(), &p(&[1]), &p(&[1]), &e(), &p(&[1])).unwrap().is_one());
        assert!(c_coeff(&e(), &e(), &e(), &e(), &p(&[1])).is_err());
        assert!(k_elem(&e(), &e(), &e(), &e()).is_one());
        assert_eq!(k_elem(&e(), &p(&[1]), &p(&[1]), &e()), rf_parse("1 - q*t^-1").unwrap());
        assert!(k_elem(&p(&[1]), &e(), &e(), &p(&[1])).is_zero());
    }

    #[test]
    fn weight_one_entries() {
        let one = p(&[1]);
        assert!(r_elem(&e(), &e(), &e(), &e()).is_one());
        assert_eq!(r_elem(&one, &e(), &one, &e()), rf_parse("q^(-1/2)*t^(1/2)*(1 - u)/(1 - u*t*q^-1)").unwrap());
        assert_eq!(r_elem(&one, &e(), &e(), &one), rf_parse("(1 - t*q^-1)/(1 - u*t*q^-1)").unwrap());
        assert_eq!(r_elem(&e(), &one, &one, &e()), rf_parse("u*(1 - t*q^-1)/(1 - u*t*q^-1)").unwrap());
        assert!(r_elem(&one, &e(), &e(), &e()).is_zero());
    }

    #[test]
    fn routes_agree_at_weight_one() {
        for (a, b) in pairs_of_weight(1) {
            for (c, d) in pairs_of_weight(1) {
                assert_eq!(r_elem(&a, &b, &c, &d), r_elem_via_rbar(&a, &b, &c, &d));
            }
        }
    }

    #[test]
    fn exponential_form_weight_two() {
        for lam in enumerate(2) {
            assert_eq!(f_exponential_series(&lam, 3).unwrap(), f_eigen_series(&lam, false, 3).unwrap());
        }
    }

    #[test]
    fn block_shapes() {
        assert_eq!(r_block(0).entries.len(), 1);
        assert_eq!(r_block(1).entries.len(), 4);
        assert_eq!(r_block(2).index_pairs.len(), 5);
    }
}
