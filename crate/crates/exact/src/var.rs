use std::cmp::Ordering;
use std::fmt;

/// Number of slots in the fixed variable registry.
pub const NVARS: usize = 16;

/// A variable of the fixed registry.
///
/// `qh` and `th` are square roots: `q = qh^2`, `t = th^2`. They print as
/// `q^(k/2)` and `t^(k/2)` so that half-integer powers of `q/t` stay exact.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub(crate) u8);

const NAMES: [&str; NVARS] = [
    "qh", "th", "u", "x", "y", "q1", "q2", "z1", "z2", "z3", "z4", "z5", "z6", "z7", "z8", "z9",
];

impl Var {
    pub const QH: Var = Var(0);
    pub const TH: Var = Var(1);
    pub const U: Var = Var(2);
    pub const X: Var = Var(3);
    pub const Y: Var = Var(4);
    pub const Q1: Var = Var(5);
    pub const Q2: Var = Var(6);
    /// Maximum number of shuffle variables `z1..z9`.
    pub const MAX_Z: usize = 9;

    /// The shuffle variable `z_i`, 1-based.
    pub fn z(i: usize) -> Var {
        assert!((1..=Self::MAX_Z).contains(&i), "z index {i} out of range");
        Var(6 + i as u8)
    }

    /// Inverse of [`Var::z`]: the 1-based index when this is a shuffle variable.
    pub fn z_index(self) -> Option<usize> {
        (self.0 >= 7).then(|| self.0 as usize - 6)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Var {
        assert!(i < NVARS);
        Var(i as u8)
    }

    pub fn name(self) -> &'static str {
        NAMES[self.0 as usize]
    }

    pub fn from_name(s: &str) -> Option<Var> {
        NAMES.iter().position(|n| *n == s).map(|i| Var(i as u8))
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NVARS as u8).map(Var)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over the registry. Exponents may be negative.
///
/// The derived `Ord` is plain lexicographic order on the slots; polynomial
/// storage uses [`grlex_cmp`] instead.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mon(pub [i16; NVARS]);

impl Mon {
    pub const ONE: Mon = Mon([0; NVARS]);

    pub fn var(v: Var) -> Mon {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Mon {
        let mut m = Mon::ONE;
        m.0[v.index()] = narrow(e);
        m
    }

    pub fn from_pairs(pairs: &[(Var, i32)]) -> Mon {
        let mut m = Mon::ONE;
        for &(v, e) in pairs {
            m.0[v.index()] = narrow(m.0[v.index()] as i32 + e);
        }
        m
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()] as i32
    }

    pub fn set_exp(&mut self, v: Var, e: i32) {
        self.0[v.index()] = narrow(e);
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }

    pub fn mul(&self, o: &Mon) -> Mon {
        let mut r = *self;
        for i in 0..NVARS {
            r.0[i] = narrow(r.0[i] as i32 + o.0[i] as i32);
        }
        r
    }

    pub fn div(&self, o: &Mon) -> Mon {
        let mut r = *self;
        for i in 0..NVARS {
            r.0[i] = narrow(r.0[i] as i32 - o.0[i] as i32);
        }
        r
    }

    pub fn pow(&self, k: i32) -> Mon {
        let mut r = *self;
        for e in r.0.iter_mut() {
            *e = narrow(*e as i32 * k);
        }
        r
    }

    pub fn inv(&self) -> Mon {
        self.pow(-1)
    }

    /// `self` divides `o` as ordinary (non-Laurent) monomials.
    pub fn divides(&self, o: &Mon) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn emin(&self, o: &Mon) -> Mon {
        let mut r = *self;
        for i in 0..NVARS {
            r.0[i] = r.0[i].min(o.0[i]);
        }
        r
    }

    pub fn emax(&self, o: &Mon) -> Mon {
        let mut r = *self;
        for i in 0..NVARS {
            r.0[i] = r.0[i].max(o.0[i]);
        }
        r
    }

    pub fn is_proper(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Bitmask of the variables with a nonzero exponent.
    pub fn support(&self) -> u16 {
        let mut s = 0u16;
        for (i, &e) in self.0.iter().enumerate() {
            if e != 0 {
                s |= 1 << i;
            }
        }
        s
    }

    /// Substitute each variable by a Laurent monomial.
    pub fn substitute(&self, image: &[Mon; NVARS]) -> Mon {
        let mut r = Mon::ONE;
        for i in 0..NVARS {
            let e = self.0[i] as i32;
            if e != 0 {
                r = r.mul(&image[i].pow(e));
            }
        }
        r
    }
}

fn narrow(e: i32) -> i16 {
    i16::try_from(e).expect("exponent overflow")
}

/// Graded lexicographic comparison: total degree first, then lex by slot.
pub fn grlex_cmp(a: &Mon, b: &Mon) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| a.0.cmp(&b.0))
}

impl fmt::Debug for Mon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mon {
    /// Factors joined by `*`; `1` for the empty monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::all() {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let (name, half) = match v {
                Var::QH => ("q", true),
                Var::TH => ("t", true),
                _ => (v.name(), false),
            };
            if half && e % 2 == 0 {
                let k = e / 2;
                if k == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{k}")?;
                }
            } else if half {
                write!(f, "{name}^({e}/2)")?;
            } else if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
