//! Simple root systems, Chevalley structure constants, Dynkin gradings, the
//! cocycle `ω² = d(n∘k/ν)` and its normal-form integrals.

use crate::error::{domain, internal, AliaError, Result};
use crate::polyhedral::{GroupModel, NVec};
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// Exact small rationals for cocycle values and exponents.
pub type Q = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<LieType> {
        let ok = match family {
            Family::A => (1..=8).contains(&rank),
            Family::B | Family::C => (2..=8).contains(&rank),
            Family::D => (4..=8).contains(&rank),
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            domain(format!("unsupported Lie type {family:?}{rank}"))
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = AliaError;

    fn from_str(s: &str) -> Result<LieType> {
        let t = s.trim();
        let mut chars = t.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(AliaError::Parse(format!("unknown Lie type {t:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| AliaError::Parse(format!("bad rank in {t:?}")))?;
        LieType::new(fam, rank)
    }
}

/// Inner products `(α_i, α_j)` of simple roots, short roots of squared length 2.
fn gram_matrix(t: LieType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut g = vec![vec![0i64; n]; n];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match t.family {
        Family::A => {
            for i in 0..n {
                g[i][i] = 2;
                if i + 1 < n {
                    link(&mut g, i, i + 1, -1);
                }
            }
        }
        Family::B => {
            for i in 0..n {
                g[i][i] = if i + 1 < n { 4 } else { 2 };
                if i + 1 < n {
                    link(&mut g, i, i + 1, -2);
                }
            }
        }
        Family::C => {
            for i in 0..n {
                g[i][i] = if i + 1 < n { 2 } else { 4 };
                if i + 1 < n {
                    link(&mut g, i, i + 1, if i + 2 == n { -2 } else { -1 });
                }
            }
        }
        Family::D => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, n - 3, n - 1, -1);
        }
        Family::E => {
            for i in 0..n {
                g[i][i] = 2;
            }
            // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Family::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub lie_type: LieType,
    pub gram: Vec<Vec<i64>>,
    /// Bourbaki convention `A_ij = ⟨α_i^∨, α_j⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots first (by height, then descending lexicographic), then their negatives
    /// in the same order.
    pub roots: Vec<Vec<i64>>,
    pub npos: usize,
    pub norms: Vec<i64>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> RootSystem {
        let n = lie_type.rank;
        let gram = gram_matrix(lie_type);
        let cartan: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[i][i]).collect()).collect();
        let ip = |a: &[i64], b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..n {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    s += a[i] * gram[i][j] * b[j];
                }
            }
            s
        };
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        let mut pos: Vec<Vec<i64>> = (0..n).map(unit).collect();
        let mut known: std::collections::HashSet<Vec<i64>> = pos.iter().cloned().collect();
        let mut layer = pos.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    // p: largest with β − p α_i a root; β + α_i is a root iff p − ⟨β, α_i^∨⟩ > 0
                    let mut p = 0;
                    let mut cur = beta.clone();
                    loop {
                        cur[i] -= 1;
                        if known.contains(&cur) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing = 2 * ip(beta, &unit(i)) / gram[i][i];
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            pos.extend(next.iter().cloned());
            layer = next;
        }
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let npos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        let norms = roots.iter().map(|r| ip(r, r)).collect();
        let index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        RootSystem { lie_type, gram, cartan, roots, npos, norms, index }
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn dim(&self) -> usize {
        self.rank() + self.num_roots()
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.npos
    }

    pub fn neg(&self, i: usize) -> usize {
        if i < self.npos {
            i + self.npos
        } else {
            i - self.npos
        }
    }

    pub fn simple(&self, j: usize) -> usize {
        j
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    /// Index of `α + β` if it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.index_of(&s)
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    /// `⟨α, α_j^∨⟩ = 2(α, α_j)/(α_j, α_j)`.
    pub fn pairing(&self, a: usize, j: usize) -> i64 {
        let r = &self.roots[a];
        let s: i64 = (0..self.rank()).map(|i| r[i] * self.gram[i][j]).sum();
        2 * s / self.gram[j][j]
    }

    /// Coroot of `α` in the basis of simple coroots.
    pub fn coroot(&self, a: usize) -> Vec<i64> {
        let r = &self.roots[a];
        let na = self.norms[a];
        (0..self.rank()).map(|i| r[i] * self.gram[i][i] / na).collect()
    }

    pub fn highest_root(&self) -> usize {
        self.npos - 1
    }

    /// Largest `p` with `β − pα` a root.
    pub fn p_value(&self, a: usize, b: usize) -> i64 {
        let mut p = 0;
        let mut cur = self.roots[b].clone();
        loop {
            for (c, x) in cur.iter_mut().zip(&self.roots[a]) {
                *c -= x;
            }
            if self.index.contains_key(&cur) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    pub fn coords_text(&self, a: usize) -> String {
        self.roots[a].iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            lie_type: self.lie_type.to_string(),
            cartan: self.cartan.clone(),
            positive_roots: self.roots[..self.npos].to_vec(),
            norms: self.norms[..self.npos].to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSystemJson {
    pub lie_type: String,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub norms: Vec<i64>,
}

/// Structure constants `[A_α, A_β] = ε(α, β) A_{α+β}` of a Chevalley basis.
#[derive(Clone, Debug)]
pub struct ChevalleyConstants {
    n: usize,
    eps: Vec<i64>,
}

impl ChevalleyConstants {
    /// Signs fixed by `ε(α, β) = p + 1` on extraspecial pairs.
    pub fn new(sys: &RootSystem) -> ChevalleyConstants {
        let n = sys.num_roots();
        let mut pos: HashMap<(usize, usize), i64> = HashMap::new();
        for xi in 0..sys.npos {
            if sys.height(xi) < 2 {
                continue;
            }
            let mut special: Vec<(usize, usize)> = Vec::new();
            for g in 0..xi {
                let mut d = sys.roots[xi].clone();
                for (c, x) in d.iter_mut().zip(&sys.roots[g]) {
                    *c -= x;
                }
                if let Some(dd) = sys.index_of(&d) {
                    if sys.is_positive(dd) && g < dd {
                        special.push((g, dd));
                    }
                }
            }
            let (a, b) = special[0];
            let nab = sys.p_value(a, b) + 1;
            pos.insert((a, b), nab);
            pos.insert((b, a), -nab);
            let xi_norm = sys.norms[xi];
            for &(g, d) in &special[1..] {
                let mut acc = Q::zero();
                let neg = |i| sys.neg(i);
                if let Some(bg) = sys.sum(b, neg(g)) {
                    let t = general(sys, &pos, b, neg(g)) * general(sys, &pos, a, neg(d));
                    acc += Q::new(t, sys.norms[bg]);
                }
                if let Some(ag) = sys.sum(a, neg(g)) {
                    let t = general(sys, &pos, neg(g), a) * general(sys, &pos, b, neg(d));
                    acc += Q::new(t, sys.norms[ag]);
                }
                let v = acc * Q::from_integer(xi_norm) / Q::from_integer(nab);
                assert!(v.is_integer(), "non-integral structure constant");
                pos.insert((g, d), v.to_integer());
                pos.insert((d, g), -v.to_integer());
            }
        }
        let mut eps = vec![0i64; n * n];
        for x in 0..n {
            for y in 0..n {
                if sys.sum(x, y).is_some() {
                    eps[x * n + y] = general(sys, &pos, x, y);
                }
            }
        }
        ChevalleyConstants { n, eps }
    }

    /// `ε(α, β)`, or `None` when `α + β` is not a root.
    pub fn get(&self, a: usize, b: usize) -> Option<i64> {
        let v = self.eps[a * self.n + b];
        (v != 0).then_some(v)
    }

    /// `ε(α, β)` or 0.
    pub fn value(&self, a: usize, b: usize) -> i64 {
        self.eps[a * self.n + b]
    }

    /// Multiplies by a sign gauge: `ε'(α, β) = s_α s_β s_{α+β} ε(α, β)`.
    pub fn gauged(&self, sys: &RootSystem, signs: &[i8]) -> ChevalleyConstants {
        let mut out = self.clone();
        for a in 0..self.n {
            for b in 0..self.n {
                if let Some(c) = sys.sum(a, b) {
                    let s = signs[a] as i64 * signs[b] as i64 * signs[c] as i64;
                    out.eps[a * self.n + b] *= s;
                }
            }
        }
        out
    }

    /// Checks the standard identities; returns the first violation.
    pub fn check(&self, sys: &RootSystem) -> Result<()> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let Some(c) = sys.sum(a, b) else { continue };
                let e = self.value(a, b);
                if e == 0 {
                    return internal("missing structure constant");
                }
                if self.value(b, a) != -e {
                    return internal("antisymmetry fails");
                }
                if self.value(sys.neg(a), sys.neg(b)) != -e {
                    return internal("negation rule fails");
                }
                if e.abs() != sys.p_value(a, b) + 1 {
                    return internal("magnitude differs from p + 1");
                }
                // ε(α+β, −α) = −|β|²/|α+β|² ε(α, β)
                let lhs = Q::from_integer(self.value(c, sys.neg(a)));
                let rhs = -Q::new(sys.norms[b], sys.norms[c]) * Q::from_integer(e);
                if lhs != rhs {
                    return internal("orbit relation fails");
                }
                // cyclic rule for α + β + γ = 0
                let g = sys.neg(c);
                let r1 = Q::new(e, sys.norms[g]);
                let r2 = Q::new(self.value(b, g), sys.norms[a]);
                let r3 = Q::new(self.value(g, a), sys.norms[b]);
                if r1 != r2 || r2 != r3 {
                    return internal("cyclic rule fails");
                }
            }
        }
        Ok(())
    }
}

fn general(sys: &RootSystem, pos: &HashMap<(usize, usize), i64>, x: usize, y: usize) -> i64 {
    let xy = sys.sum(x, y).expect("structure constant requested for a non-root sum");
    let w = sys.neg(xy);
    let (px, py, pw) = (sys.is_positive(x), sys.is_positive(y), sys.is_positive(w));
    if px && py {
        return *pos.get(&(x, y)).expect("positive pair processed in height order");
    }
    // N_{x,y}/|w|² = N_{y,w}/|x|² = N_{w,x}/|y|²
    if py && pw {
        return sys.norms[w] * general(sys, pos, y, w) / sys.norms[x];
    }
    if pw && px {
        return sys.norms[w] * general(sys, pos, w, x) / sys.norms[y];
    }
    -general(sys, pos, sys.neg(x), sys.neg(y))
}

/// Sparse element of the Lie algebra in the basis `h_1..h_N, A_α` (roots after the Cartan part).
pub type SparseVec = Vec<(usize, i64)>;

/// Bracket of two basis elements of the Chevalley basis.
pub fn chevalley_bracket(sys: &RootSystem, eps: &ChevalleyConstants, x: usize, y: usize) -> SparseVec {
    let r = sys.rank();
    match (x < r, y < r) {
        (true, true) => Vec::new(),
        (true, false) => vec![(y, sys.pairing(y - r, x))],
        (false, true) => vec![(x, -sys.pairing(x - r, y))],
        (false, false) => {
            let (a, b) = (x - r, y - r);
            if b == sys.neg(a) {
                sys.coroot(a).into_iter().enumerate().filter(|(_, c)| *c != 0).collect()
            } else if let Some(c) = sys.sum(a, b) {
                vec![(c + r, eps.value(a, b))]
            } else {
                Vec::new()
            }
        }
    }
}

/// Number of basis triples violating the Jacobi identity in the Chevalley basis.
pub fn chevalley_jacobi_violations(sys: &RootSystem, eps: &ChevalleyConstants) -> usize {
    let dim = sys.dim();
    let br = |x: usize, v: &SparseVec| -> HashMap<usize, i64> {
        let mut out = HashMap::new();
        for &(y, c) in v {
            for (z, d) in chevalley_bracket(sys, eps, x, y) {
                *out.entry(z).or_insert(0) += c * d;
            }
        }
        out
    };
    let mut bad = 0;
    for x in 0..dim {
        for y in x + 1..dim {
            let xy = chevalley_bracket(sys, eps, x, y);
            for z in y + 1..dim {
                let yz = chevalley_bracket(sys, eps, y, z);
                let zx = chevalley_bracket(sys, eps, z, x);
                let mut tot = br(x, &yz);
                for (k, v) in br(y, &zx) {
                    *tot.entry(k).or_insert(0) += v;
                }
                for (k, v) in br(z, &xy) {
                    *tot.entry(k).or_insert(0) += v;
                }
                if tot.values().any(|v| *v != 0) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

/// Labels of a weighted Dynkin diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynkinGrading {
    pub labels: Vec<i64>,
}

impl DynkinGrading {
    pub fn new(labels: Vec<i64>) -> Result<DynkinGrading> {
        if labels.iter().any(|l| !(0..=2).contains(l)) {
            return domain("grading labels must lie in {0, 1, 2}");
        }
        Ok(DynkinGrading { labels })
    }

    pub fn principal(rank: usize) -> DynkinGrading {
        DynkinGrading { labels: vec![2; rank] }
    }

    pub fn fits(&self, sys: &RootSystem) -> Result<()> {
        if self.labels.len() != sys.rank() {
            return domain(format!("{} labels given for rank {}", self.labels.len(), sys.rank()));
        }
        Ok(())
    }

    /// `k(α) = Σ c_j label_j`.
    pub fn k(&self, sys: &RootSystem, a: usize) -> i64 {
        sys.roots[a].iter().zip(&self.labels).map(|(c, l)| c * l).sum()
    }

    pub fn is_even_on(&self, sys: &RootSystem) -> bool {
        (0..sys.num_roots()).all(|a| self.k(sys, a) % 2 == 0)
    }

    /// Necessary condition for the labels to come from an `sl₂`-triple: the
    /// eigenvalue multiplicities of `h` must be those of an `sl₂`-module.
    pub fn sl2_compatible(&self, sys: &RootSystem) -> bool {
        let mut mult: HashMap<i64, i64> = HashMap::new();
        *mult.entry(0).or_insert(0) += sys.rank() as i64;
        for a in 0..sys.num_roots() {
            *mult.entry(self.k(sys, a)).or_insert(0) += 1;
        }
        let top = mult.keys().copied().max().unwrap_or(0);
        (0..=top).all(|k| mult.get(&k).copied().unwrap_or(0) >= mult.get(&(k + 2)).copied().unwrap_or(0))
    }
}

impl fmt::Display for DynkinGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DynkinGrading {
    type Err = AliaError;

    fn from_str(s: &str) -> Result<DynkinGrading> {
        let labels = s
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| AliaError::Parse(format!("bad grading label {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        DynkinGrading::new(labels)
    }
}

/// Even gradings of rank at most two, in Bourbaki numbering.
pub fn even_rank2_gradings(t: LieType) -> Vec<DynkinGrading> {
    let g = |v: &[i64]| DynkinGrading { labels: v.to_vec() };
    match (t.family, t.rank) {
        (Family::A, 1) => vec![g(&[2])],
        (Family::A, 2) => vec![g(&[2, 2])],
        (Family::B, 2) => vec![g(&[2, 0]), g(&[2, 2])],
        (Family::C, 2) => vec![g(&[0, 2]), g(&[2, 2])],
        (Family::G, 2) => vec![g(&[0, 2]), g(&[2, 2])],
        _ => Vec::new(),
    }
}

/// Type-A gradings used in the fixed-point dimension arguments.
pub fn type_a_gradings() -> Vec<DynkinGrading> {
    [
        vec![2, 0, 2],
        vec![0, 2, 0],
        vec![2, 0, 0, 2],
        vec![2, 2, 0, 2, 2],
        vec![2, 0, 2, 0, 2],
        vec![0, 2, 0, 2, 0],
        vec![2, 0, 0, 0, 2],
        vec![0, 0, 2, 0, 0],
    ]
    .into_iter()
    .map(|labels| DynkinGrading { labels })
    .collect()
}

/// All built-in gradings for a type: principal, the even rank-two ones, and the type-A list.
pub fn grading_library(t: LieType) -> Vec<DynkinGrading> {
    let mut out = vec![DynkinGrading::principal(t.rank)];
    for g in even_rank2_gradings(t).into_iter().chain(type_a_gradings()) {
        if g.labels.len() == t.rank && (t.family == Family::A || g.labels.len() <= 2) && !out.contains(&g) {
            if t.family != Family::A && g.labels.len() > 2 {
                continue;
            }
            out.push(g);
        }
    }
    out
}

/// Which residue convention feeds the cocycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum NConvention {
    /// `(k/2) mod ν_i` for every group.
    #[default]
    Canonical,
    /// The printed table's convention (differs for `C_{2m}` only).
    Tabulated,
}

fn nvec(model: &GroupModel, k: i64, conv: NConvention) -> Result<NVec> {
    match conv {
        NConvention::Canonical => model.n_map(k),
        NConvention::Tabulated => model.n_map_tabulated(k),
    }
}

/// `ω²(α, β)_i = θ(α)_i + θ(β)_i − θ(α + β)_i` with `θ = n∘k/ν`.
#[derive(Clone, Debug)]
pub struct Cocycle2 {
    pub ncomp: usize,
    pub halved: bool,
    n: usize,
    theta: Vec<Option<Vec<Q>>>,
    values: Vec<Option<Vec<Q>>>,
}

impl Cocycle2 {
    pub fn new(sys: &RootSystem, grading: &DynkinGrading, model: &GroupModel, conv: NConvention) -> Result<Cocycle2> {
        grading.fits(sys)?;
        let n = sys.num_roots();
        let ncomp = model.num_orbits();
        let mut halved = false;
        let mut theta = Vec::with_capacity(n);
        for a in 0..n {
            let k = grading.k(sys, a);
            if k % 2 != 0 {
                theta.push(None);
                continue;
            }
            let nv = nvec(model, k, conv)?;
            halved |= nv.halved;
            theta.push(Some(nv.residues.iter().zip(&model.nu).map(|(&r, &v)| Q::new(r, v as i64)).collect()));
        }
        let zero = vec![Q::zero(); ncomp];
        let mut values = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                let (Some(ta), Some(tb)) = (&theta[a], &theta[b]) else { continue };
                let tc = if b == sys.neg(a) {
                    &zero
                } else if let Some(c) = sys.sum(a, b) {
                    match &theta[c] {
                        Some(t) => t,
                        None => continue,
                    }
                } else {
                    continue;
                };
                let v: Vec<Q> = (0..ncomp).map(|i| ta[i] + tb[i] - tc[i]).collect();
                values[a * n + b] = Some(v);
            }
        }
        let c = Cocycle2 { ncomp, halved, n, theta, values };
        c.check_values()?;
        Ok(c)
    }

    fn check_values(&self) -> Result<()> {
        let top = if self.halved { Q::new(1, 2) } else { Q::one() };
        for v in self.values.iter().flatten() {
            if v.iter().any(|x| *x != Q::zero() && *x != top) {
                return internal(format!("cocycle value {v:?} outside the allowed set"));
            }
        }
        Ok(())
    }

    pub fn get(&self, a: usize, b: usize) -> Option<&[Q]> {
        self.values[a * self.n + b].as_deref()
    }

    pub fn theta(&self, a: usize) -> Option<&[Q]> {
        self.theta[a].as_deref()
    }

    /// Symmetry, the cocycle identity on root triples and the orbit relation.
    pub fn check_identities(&self, sys: &RootSystem) -> Result<()> {
        let n = self.n;
        let sub = |x: &[Q], y: &[Q]| -> Vec<Q> { x.iter().zip(y).map(|(a, b)| a - b).collect() };
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.get(a, b) else { continue };
                if self.get(b, a) != Some(ab) {
                    return internal("cocycle is not symmetric");
                }
                let Some(c) = sys.sum(a, b) else { continue };
                // ω²(α+β, −α) = ω²(α, −α) − ω²(α, β)
                if let (Some(l), Some(aa)) = (self.get(c, sys.neg(a)), self.get(a, sys.neg(a))) {
                    if l != sub(aa, ab).as_slice() {
                        return internal("orbit relation for the cocycle fails");
                    }
                }
                // ω²(α, β) + ω²(α+β, γ) = ω²(β, γ) + ω²(α, β+γ)
                for g in 0..n {
                    let (Some(cg), Some(bg)) = (self.get(c, g), sys.sum(b, g)) else { continue };
                    let (Some(w_bg), Some(w_abg)) = (self.get(b, g), self.get(a, bg)) else { continue };
                    let lhs: Vec<Q> = ab.iter().zip(cg).map(|(x, y)| x + y).collect();
                    let rhs: Vec<Q> = w_bg.iter().zip(w_abg).map(|(x, y)| x + y).collect();
                    if lhs != rhs {
                        return internal("cocycle identity fails");
                    }
                }
            }
        }
        Ok(())
    }
}

/// One row of the six-element orbit of `(α, β) ↦ (α + β, −α)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub pair: (Vec<i64>, Vec<i64>),
    pub eps_formula: Q,
    pub eps_direct: i64,
    pub omega_formula: Vec<Q>,
    pub omega_direct: Vec<Q>,
}

impl OrbitRow {
    pub fn consistent(&self) -> bool {
        self.eps_formula == Q::from_integer(self.eps_direct) && self.omega_formula == self.omega_direct
    }
}

/// Structure constants on the orbit of a positive pair, from the closed formulas
/// and by direct lookup.
pub fn orbit_table(sys: &RootSystem, eps: &ChevalleyConstants, w: &Cocycle2, a: usize, b: usize) -> Result<Vec<OrbitRow>> {
    let c = sys.sum(a, b).ok_or_else(|| AliaError::Domain("α + β is not a root".into()))?;
    let (na, nb, nc) = (sys.neg(a), sys.neg(b), sys.neg(c));
    let e = Q::from_integer(eps.value(a, b));
    let ra = Q::new(sys.norms[a], sys.norms[c]);
    let rb = Q::new(sys.norms[b], sys.norms[c]);
    let get = |x: usize, y: usize| -> Result<Vec<Q>> {
        w.get(x, y).map(|v| v.to_vec()).ok_or_else(|| AliaError::Domain("pair involves odd degrees".into()))
    };
    let sub = |x: &[Q], y: &[Q]| -> Vec<Q> { x.iter().zip(y).map(|(p, q)| p - q).collect() };
    let w_ab = get(a, b)?;
    let w1 = sub(&get(a, na)?, &w_ab);
    let w2 = sub(&get(c, nc)?, &w1);
    let w3 = sub(&get(b, nb)?, &w2);
    let w4 = sub(&get(a, na)?, &w3);
    let w5 = sub(&get(c, nc)?, &w4);
    let rows = [
        ((a, b), e, w_ab),
        ((c, na), -rb * e, w1),
        ((b, nc), ra * e, w2),
        ((na, nb), -e, w3),
        ((nc, a), rb * e, w4),
        ((nb, c), -ra * e, w5),
    ];
    rows.into_iter()
        .map(|((x, y), ef, wf)| {
            Ok(OrbitRow {
                pair: (sys.roots[x].clone(), sys.roots[y].clone()),
                eps_formula: ef,
                eps_direct: eps.value(x, y),
                omega_formula: wf,
                omega_direct: get(x, y)?,
            })
        })
        .collect()
}

/// A normal-form integral `ω¹` and the data of its search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    /// `ω¹(α)` per root (indexed like the root system) and per orbit component.
    pub values: Vec<Vec<Q>>,
    /// Number of admissible simple-root assignments per component.
    pub candidates: Vec<usize>,
}

/// Lexicographically minimal integral of the cocycle with values in the allowed set.
pub fn normal_form_integral(sys: &RootSystem, w: &Cocycle2) -> Result<NormalForm> {
    let n = sys.num_roots();
    let r = sys.rank();
    let thetas: Vec<&[Q]> = (0..n)
        .map(|a| w.theta(a).ok_or_else(|| AliaError::Domain("normal forms need an even grading".into())))
        .collect::<Result<_>>()?;
    let unit = if w.halved { Q::new(1, 2) } else { Q::one() };
    let allowed: Vec<Q> = if sys.lie_type.family == Family::A {
        vec![Q::zero(), unit]
    } else {
        vec![-unit, Q::zero(), unit]
    };
    let mut values = vec![vec![Q::zero(); w.ncomp]; n];
    let mut candidates = Vec::with_capacity(w.ncomp);
    for i in 0..w.ncomp {
        let mut best: Option<Vec<Q>> = None;
        let mut count = 0usize;
        let total = allowed.len().pow(r as u32);
        for code in 0..total {
            // most significant digit first, so codes increase lexicographically
            let mut v = vec![Q::zero(); r];
            let mut c = code;
            for j in (0..r).rev() {
                v[j] = allowed[c % allowed.len()];
                c /= allowed.len();
            }
            let shift: Vec<Q> = (0..r).map(|j| v[j] - thetas[j][i]).collect();
            let ok = (0..n).all(|a| {
                let val = thetas[a][i] + (0..r).map(|j| shift[j] * Q::from_integer(sys.roots[a][j])).sum::<Q>();
                allowed.contains(&val)
            });
            if ok {
                count += 1;
                if best.is_none() {
                    best = Some(v);
                }
            }
        }
        let v = best.ok_or_else(|| AliaError::Verification(format!("no integral in normal form for component {}", i + 1)))?;
        let shift: Vec<Q> = (0..r).map(|j| v[j] - thetas[j][i]).collect();
        for a in 0..n {
            values[a][i] = thetas[a][i] + (0..r).map(|j| shift[j] * Q::from_integer(sys.roots[a][j])).sum::<Q>();
        }
        candidates.push(count);
    }
    // dω¹ = ω²
    for a in 0..n {
        for b in 0..n {
            let Some(t) = w.get(a, b) else { continue };
            let s = if b == sys.neg(a) { None } else { sys.sum(a, b) };
            for i in 0..w.ncomp {
                let d = values[a][i] + values[b][i] - s.map_or(Q::zero(), |c| values[c][i]);
                if d != t[i] {
                    return internal("normal form does not integrate the cocycle");
                }
            }
        }
    }
    Ok(NormalForm { values, candidates })
}

/// Signs `s_α = s_{−α} ∈ {±1}` with `s_α s_β s_{α+β} = flip(α, β)`, solved over GF(2).
/// Constraints are `(α, β, flip)` with `α + β` a root. Returns per-root signs.
pub fn solve_sign_gauge(sys: &RootSystem, constraints: &[(usize, usize, bool)]) -> Option<Vec<i8>> {
    let nv = sys.npos;
    let words = nv / 64 + 1;
    let var = |i: usize| if sys.is_positive(i) { i } else { sys.neg(i) };
    let mut rows: Vec<(Vec<u64>, bool)> = Vec::new();
    for &(a, b, flip) in constraints {
        let c = sys.sum(a, b)?;
        let mut bits = vec![0u64; words];
        for v in [var(a), var(b), var(c)] {
            bits[v / 64] ^= 1 << (v % 64);
        }
        rows.push((bits, flip));
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..nv {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (row..rows.len()).find(|&r| rows[r].0[w] & bit != 0) else { continue };
        rows.swap(row, p);
        let (prow, prhs) = rows[row].clone();
        for (r, item) in rows.iter_mut().enumerate() {
            if r != row && item.0[w] & bit != 0 {
                for (x, y) in item.0.iter_mut().zip(&prow) {
                    *x ^= y;
                }
                item.1 ^= prhs;
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    if rows[row..].iter().any(|(_, rhs)| *rhs) {
        return None;
    }
    let mut x = vec![false; nv];
    for &(r, col) in &pivots {
        x[col] = rows[r].1;
    }
    let mut signs = vec![1i8; sys.num_roots()];
    for i in 0..sys.num_roots() {
        if x[var(i)] {
            signs[i] = -1;
        }
    }
    Some(signs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (t, n) in [("A2", 6), ("B3", 18), ("C3", 18), ("D4", 24), ("G2", 12), ("F4", 48), ("E6", 72), ("E7", 126), ("E8", 240)] {
            let s = RootSystem::new(t.parse().unwrap());
            assert_eq!(s.num_roots(), n, "{t}");
        }
    }

    #[test]
    fn highest_roots() {
        let g2 = RootSystem::new("G2".parse().unwrap());
        assert_eq!(g2.root(g2.highest_root()), &[3, 2]);
        let e8 = RootSystem::new("E8".parse().unwrap());
        assert_eq!(e8.root(e8.highest_root()), &[2, 3, 4, 6, 5, 4, 3, 2]);
        let a2 = RootSystem::new("A2".parse().unwrap());
        assert_eq!(&a2.roots[..3], &[vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn epsilon_a2() {
        let s = RootSystem::new("A2".parse().unwrap());
        let e = ChevalleyConstants::new(&s);
        assert_eq!(e.get(0, 1), Some(1));
        assert_eq!(e.get(s.neg(0), s.neg(1)), Some(-1));
        e.check(&s).unwrap();
    }

    #[test]
    fn coroots() {
        let s = RootSystem::new("A2".parse().unwrap());
        assert_eq!(s.coroot(2), vec![1, 1]);
        let g = RootSystem::new("G2".parse().unwrap());
        // long root α1 + α2 has coroot α1^∨ + 3 α2^∨ scaled by |α_i|²/|α|²
        let idx = g.index_of(&[1, 1]).unwrap();
        assert_eq!(g.norms[idx], 2);
        assert_eq!(g.coroot(idx), vec![1, 3]);
        let hi = g.highest_root();
        assert_eq!(g.coroot(hi), vec![1, 2]);
    }

    #[test]
    fn gradings() {
        let s = RootSystem::new("A2".parse().unwrap());
        let g = DynkinGrading::principal(2);
        assert_eq!(g.k(&s, 2), 4);
        let g2 = RootSystem::new("G2".parse().unwrap());
        let lab: DynkinGrading = "0,2".parse().unwrap();
        assert_eq!(lab.k(&g2, g2.highest_root()), 4);
        assert!(lab.sl2_compatible(&g2));
        assert!(!DynkinGrading { labels: vec![2, 0] }.sl2_compatible(&g2));
    }
}
