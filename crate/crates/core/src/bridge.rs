//! Circulant specializations: the shift digraph on `[s]`, parameter
//! translations between circuit families of `D(n, k)` and `G(n, k)`, and the
//! arithmetic existence conditions.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BridgeError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

impl BridgeError {
    pub fn code(&self) -> &'static str {
        match self {
            BridgeError::PreconditionViolated(_) => "PreconditionViolated",
        }
    }
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<(), BridgeError> {
    if cond {
        Ok(())
    } else {
        Err(BridgeError::PreconditionViolated(what()))
    }
}

/// A circuit of the shift digraph `i → i + p` on `[s]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftCircuit {
    pub vertices: Vec<usize>,
    pub winding: usize,
}

/// The circuits of the digraph on `[s]` with arcs `(i, i + p)`.
pub fn decompose_shift_digraph(s: usize, p: usize) -> Result<Vec<ShiftCircuit>, BridgeError> {
    require(p >= 1 && p < s, || format!("need 1 <= p < s, got s = {s}, p = {p}"))?;
    let mut seen = vec![false; s + 1];
    let mut out = Vec::new();
    for start in 1..=s {
        if seen[start] {
            continue;
        }
        let mut vertices = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            vertices.push(v);
            v = (v - 1 + p) % s + 1;
        }
        let winding = vertices.len() * p / s;
        out.push(ShiftCircuit { vertices, winding });
    }
    Ok(out)
}

/// A family of `a` disjoint circuits of `D(n, k)`, each with `s` row arcs,
/// winding `p` and `w = sk − pn` reverse arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DSide {
    pub a: usize,
    pub s: usize,
    pub p: usize,
    pub w: usize,
}

impl DSide {
    /// Parameters `(as, ap)` of the induced minor.
    pub fn pooled(&self) -> (usize, usize) {
        (self.a * self.s, self.a * self.p)
    }
}

/// A family of `d` disjoint circuits of `G(n, k)`, each with `n2` arcs of
/// length `k`, `n3` arcs of length `k + 1` and winding `n1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GSide {
    pub d: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

fn gcd3(x: usize, y: usize, z: usize) -> usize {
    x.gcd(&y).gcd(&z)
}

/// Checks the D-side conditions and returns `w`.
pub fn check_d_side(n: usize, k: usize, a: usize, s: usize, p: usize) -> Result<usize, BridgeError> {
    require(a >= 1 && s >= 1 && p >= 1, || "a, s and p must be positive".into())?;
    require(s.gcd(&p) == 1, || format!("gcd(s, p) = {} != 1", s.gcd(&p)))?;
    require(s * k > p * n, || format!("w = sk - pn = {} is not positive", s as i64 * k as i64 - (p * n) as i64))?;
    let w = s * k - p * n;
    require(a * (s + w) + 2 <= n, || format!("a(s + w) = {} exceeds n - 2", a * (s + w)))?;
    require(a * p < k, || format!("ap = {} exceeds k - 1", a * p))?;
    Ok(w)
}

pub fn check_g_side(n: usize, k: usize, g: GSide) -> Result<(), BridgeError> {
    let GSide { d, n1, n2, n3 } = g;
    require(d >= 1 && n1 >= 1 && n2 >= 1 && n3 >= 1, || "d, n1, n2 and n3 must be positive".into())?;
    require(gcd3(n1, n2, n3) == 1, || format!("gcd(n1, n2, n3) = {} != 1", gcd3(n1, n2, n3)))?;
    require(n1 * n == n2 * k + n3 * (k + 1), || {
        format!("n1 n = {} but n2 k + n3 (k + 1) = {}", n1 * n, n2 * k + n3 * (k + 1))
    })?;
    require(d * (n2 + n3) + 2 <= n, || format!("d(n2 + n3) = {} exceeds n - 2", d * (n2 + n3)))?;
    require(d * n1 < k, || format!("d n1 = {} exceeds k - 1", d * n1))?;
    Ok(())
}

/// `(a, s, p)` on `D(n, k)` to `(d, n1, n2, n3)` on `G(n, k)`.
pub fn translate_d_to_g(n: usize, k: usize, a: usize, s: usize, p: usize) -> Result<GSide, BridgeError> {
    check_d_side(n, k, a, s, p)?;
    let (ni, ki, ai, si, pi) = (n as i64, k as i64, a as i64, s as i64, p as i64);
    let x1 = ki - ai * pi;
    let x2 = ni * (ai * pi + 1) - ai * si * (ki + 1);
    let x3 = ai * (si * ki - ni * pi);
    require(x1 > 0 && x2 > 0 && x3 > 0, || format!("non-positive components ({x1}, {x2}, {x3})"))?;
    require(x1 * ni == x2 * ki + x3 * (ki + 1), || "translation identity fails".into())?;
    let d = gcd3(x1 as usize, x2 as usize, x3 as usize);
    Ok(GSide { d, n1: x1 as usize / d, n2: x2 as usize / d, n3: x3 as usize / d })
}

/// Result of [`translate_g_to_d`]: per-member `(s, p)` with `gcd(s, p) = 1`
/// and multiplicity `a`, plus the pooled minor parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GToD {
    pub a: usize,
    pub s: usize,
    pub p: usize,
    pub pooled_s: usize,
    pub pooled_p: usize,
}

pub fn translate_g_to_d(n: usize, k: usize, g: GSide) -> Result<GToD, BridgeError> {
    check_g_side(n, k, g)?;
    let GSide { d, n1, n2, n3 } = g;
    let y1 = k - d * n1;
    let y2 = n - d * (n2 + n3);
    let (ni, ki) = (n as i64, k as i64);
    require(
        y1 as i64 * ni == y2 as i64 * ki - (d * n3) as i64,
        || "translation identity fails".into(),
    )?;
    let a = y1.gcd(&y2);
    Ok(GToD { a, s: y2 / a, p: y1 / a, pooled_s: y2, pooled_p: y1 })
}

/// All `(s, p, w)` satisfying the D-side conditions for multiplicity `a`,
/// ordered by `w`, then `p`, then `s`.
pub fn witnesses_d(n: usize, k: usize, a: usize) -> Vec<DSide> {
    let mut out = Vec::new();
    if a == 0 || n < 4 || k < 2 {
        return out;
    }
    for p in 1..=(k - 1) / a {
        for s in 1..=n {
            if let Ok(w) = check_d_side(n, k, a, s, p) {
                out.push(DSide { a, s, p, w });
            }
        }
    }
    out.sort_by_key(|x| (x.w, x.p, x.s));
    out
}

/// All `(n1, n2, n3)` satisfying the G-side conditions for multiplicity `d`,
/// ordered by `n1`, then `n2`.
pub fn witnesses_g(n: usize, k: usize, d: usize) -> Vec<GSide> {
    let mut out = Vec::new();
    if d == 0 || n < 4 || k < 1 {
        return out;
    }
    for n1 in 1..=(k - 1) / d {
        for n2 in 1..n {
            let rest = (n1 * n).checked_sub(n2 * k);
            if let Some(rest) = rest {
                if rest % (k + 1) == 0 {
                    let g = GSide { d, n1, n2, n3: rest / (k + 1) };
                    if check_g_side(n, k, g).is_ok() {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

pub fn existence_d(n: usize, k: usize, a: usize) -> Option<DSide> {
    witnesses_d(n, k, a).into_iter().next()
}

pub fn existence_g(n: usize, k: usize, d: usize) -> Option<GSide> {
    witnesses_g(n, k, d).into_iter().next()
}
