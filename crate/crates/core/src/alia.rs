//! Structure tables of automorphic Lie algebras in normal form, with Jacobi
//! verification, abelianisation, isomorphism keys and fixed-point dimensions.

use crate::error::{domain, AliaError, Result};
use crate::exactnum::Rat;
use crate::par::{self, Exec};
use crate::polyhedral::{GroupKind, GroupModel, OrbitSel};
use crate::rootsystem::{ChevalleyConstants, Cocycle2, DynkinGrading, LieType, NConvention, RootSystem, Q};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Glyphs for the Hauptmoduln, by orbit index.
pub const GLYPHS: [char; 3] = ['I', 'J', 'K'];

/// Where the automorphic functions may have poles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PoleChoice {
    /// `P = P_j^{ν_j}`: the Hauptmodul of orbit `j` is 1.
    Orbit(usize),
    /// A general orbit: every Hauptmodul is nontrivial.
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AliaSpec {
    pub group: GroupKind,
    pub pole: PoleChoice,
    pub lie_type: LieType,
    pub grading: DynkinGrading,
    pub convention: NConvention,
}

impl AliaSpec {
    pub fn new(group: GroupKind, pole: OrbitSel, lie_type: LieType, grading: DynkinGrading) -> Result<AliaSpec> {
        let model = GroupModel::build(group)?;
        let j = model.orbit_index(pole)?;
        if grading.labels.len() != lie_type.rank {
            return domain(format!("{} labels given for {lie_type}", grading.labels.len()));
        }
        Ok(AliaSpec { group, pole: PoleChoice::Orbit(j), lie_type, grading, convention: NConvention::Canonical })
    }

    pub fn principal(group: GroupKind, pole: OrbitSel, lie_type: LieType) -> Result<AliaSpec> {
        AliaSpec::new(group, pole, lie_type, DynkinGrading::principal(lie_type.rank))
    }

    pub fn with_pole(mut self, pole: PoleChoice) -> AliaSpec {
        self.pole = pole;
        self
    }

    pub fn with_convention(mut self, convention: NConvention) -> AliaSpec {
        self.convention = convention;
        self
    }
}

impl fmt::Display for AliaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pole = match self.pole {
            PoleChoice::Orbit(j) => format!("orbit {}", j + 1),
            PoleChoice::Generic => "generic".to_string(),
        };
        write!(f, "{} / {} / {} / pole {}", self.group, self.lie_type, self.grading, pole)
    }
}

/// All data derived from a spec.
#[derive(Clone, Debug)]
pub struct Alia {
    pub spec: AliaSpec,
    pub model: GroupModel,
    pub sys: RootSystem,
    pub eps: ChevalleyConstants,
    pub omega: Cocycle2,
}

impl Alia {
    pub fn new(spec: AliaSpec) -> Result<Alia> {
        let model = GroupModel::build(spec.group)?;
        if let PoleChoice::Orbit(j) = spec.pole {
            if j >= model.num_orbits() {
                return domain(format!("pole orbit {} out of range", j + 1));
            }
        }
        let sys = RootSystem::new(spec.lie_type);
        spec.grading.fits(&sys)?;
        let eps = ChevalleyConstants::new(&sys);
        let omega = Cocycle2::new(&sys, &spec.grading, &model, spec.convention)?;
        Ok(Alia { spec, model, sys, eps, omega })
    }

    /// Orbits whose Hauptmodul is not identically 1.
    pub fn omega_star(&self) -> Vec<usize> {
        (0..self.model.num_orbits()).filter(|&i| self.spec.pole != PoleChoice::Orbit(i)).collect()
    }

    /// Roots with odd degree; their basis elements vanish.
    pub fn odd_roots(&self) -> Vec<usize> {
        (0..self.sys.num_roots()).filter(|&a| self.spec.grading.k(&self.sys, a) % 2 != 0).collect()
    }

    pub fn bracket_table(&self) -> BracketTable {
        build_bracket_table(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BasisElem {
    Cartan(usize),
    Root(usize),
}

/// A scalar times a monomial `Π 𝕀_i^{e_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonoCoeff {
    pub scalar: Q,
    pub exponents: Vec<Q>,
}

impl MonoCoeff {
    pub fn scalar(s: i64, ncomp: usize) -> MonoCoeff {
        MonoCoeff { scalar: Q::from_integer(s), exponents: vec![Q::zero(); ncomp] }
    }

    /// Exponents with the given components suppressed.
    pub fn visible_exponents(&self, drop: Option<usize>) -> Vec<Q> {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, e)| if Some(i) == drop { Q::zero() } else { *e })
            .collect()
    }

    /// `IJK`-style monomial, `1` for the empty product.
    pub fn monomial_text(&self, drop: Option<usize>) -> String {
        let mut s = String::new();
        for (i, e) in self.visible_exponents(drop).iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            s.push(GLYPHS[i]);
            if !e.is_one() {
                s.push_str(&format!("^{e}"));
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// Brackets of basis elements over the ring generated by the Hauptmoduln.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketTable {
    pub lie_type: LieType,
    pub rank: usize,
    pub ncomp: usize,
    /// Component suppressed in displays (the pole orbit), if any.
    pub pole: Option<usize>,
    pub basis: Vec<BasisElem>,
    /// Coordinates of every root of the system, indexed like [`BasisElem::Root`].
    pub roots: Vec<Vec<i64>>,
    pub npos: usize,
    /// Roots omitted because their degree is odd.
    pub omitted: Vec<usize>,
    entries: Vec<Vec<(usize, MonoCoeff)>>,
    position: BTreeMap<BasisElem, usize>,
}

impl BracketTable {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, e: BasisElem) -> Option<usize> {
        self.position.get(&e).copied()
    }

    /// `[x, y]` in basis positions.
    pub fn entry(&self, x: usize, y: usize) -> &[(usize, MonoCoeff)] {
        &self.entries[x * self.basis.len() + y]
    }

    pub fn root_position(&self, coords: &[i64]) -> Option<usize> {
        let a = self.roots.iter().position(|r| r == coords)?;
        self.position(BasisElem::Root(a))
    }

    pub fn label(&self, e: BasisElem) -> String {
        match e {
            BasisElem::Cartan(i) => format!("h{}", i + 1),
            BasisElem::Root(a) => format!("a[{}]", coords_text(&self.roots[a])),
        }
    }

    /// Every exponent vector occurring in the table.
    pub fn exponent_vectors(&self) -> Vec<Vec<Q>> {
        let mut out: Vec<Vec<Q>> = self.entries.iter().flatten().map(|(_, c)| c.exponents.clone()).collect();
        out.sort();
        out.dedup();
        out
    }
}

pub fn coords_text(c: &[i64]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `[h_i, h_j] = 0`, `[h_i, ā_α] = α(H_i) ā_α`, `[ā_α, ā_{−α}] = 𝕀^{ω²(α,−α)} h_α`,
/// `[ā_α, ā_β] = ε(α, β) 𝕀^{ω²(α,β)} ā_{α+β}`.
pub fn build_bracket_table(alg: &Alia) -> BracketTable {
    let sys = &alg.sys;
    let r = sys.rank();
    let ncomp = alg.omega.ncomp;
    let omitted = alg.odd_roots();
    let mut basis: Vec<BasisElem> = (0..r).map(BasisElem::Cartan).collect();
    basis.extend((0..sys.num_roots()).filter(|a| !omitted.contains(a)).map(BasisElem::Root));
    let position: BTreeMap<BasisElem, usize> = basis.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let dim = basis.len();
    let mono = |s: i64, e: &[Q]| MonoCoeff { scalar: Q::from_integer(s), exponents: e.to_vec() };
    let rows = par::map_range(Exec::default(), dim, |x| {
        let mut row = Vec::with_capacity(dim);
        for y in 0..dim {
            let mut out: Vec<(usize, MonoCoeff)> = Vec::new();
            match (basis[x], basis[y]) {
                (BasisElem::Cartan(_), BasisElem::Cartan(_)) => {}
                (BasisElem::Cartan(i), BasisElem::Root(a)) => {
                    let p = sys.pairing(a, i);
                    if p != 0 {
                        out.push((y, MonoCoeff::scalar(p, ncomp)));
                    }
                }
                (BasisElem::Root(a), BasisElem::Cartan(i)) => {
                    let p = sys.pairing(a, i);
                    if p != 0 {
                        out.push((x, MonoCoeff::scalar(-p, ncomp)));
                    }
                }
                (BasisElem::Root(a), BasisElem::Root(b)) => {
                    if b == sys.neg(a) {
                        let w = alg.omega.get(a, b).expect("even roots pair to zero");
                        for (i, c) in sys.coroot(a).into_iter().enumerate() {
                            if c != 0 {
                                out.push((i, mono(c, w)));
                            }
                        }
                    } else if let Some(c) = sys.sum(a, b) {
                        if let (Some(&pc), Some(w)) = (position.get(&BasisElem::Root(c)), alg.omega.get(a, b)) {
                            out.push((pc, mono(alg.eps.value(a, b), w)));
                        }
                    }
                }
            }
            row.push(out);
        }
        row
    });
    BracketTable {
        lie_type: sys.lie_type,
        rank: r,
        ncomp,
        pole: match alg.spec.pole {
            PoleChoice::Orbit(j) => Some(j),
            PoleChoice::Generic => None,
        },
        basis,
        roots: sys.roots.clone(),
        npos: sys.npos,
        omitted,
        entries: rows.into_iter().flatten().collect(),
        position,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiReport {
    pub triples: u64,
    pub violations: u64,
    /// Up to ten offending triples, as basis labels.
    pub examples: Vec<(String, String, String)>,
}

impl JacobiReport {
    pub fn ok(&self) -> bool {
        self.violations == 0
    }
}

/// Exponents in units of ½ packed into one integer, 8 bits per component.
fn pack(e: &[Q]) -> u64 {
    e.iter().enumerate().map(|(i, q)| ((q * Q::from_integer(2)).to_integer() as u64) << (8 * i)).sum()
}

type Term = (usize, i64, u64);

/// Jacobi identity for every triple of basis elements, in the free commutative
/// ring on the Hauptmoduln.
pub fn jacobi_check(table: &BracketTable, exec: Exec) -> JacobiReport {
    let dim = table.dim();
    let compact: Vec<Vec<Term>> = table
        .entries
        .iter()
        .map(|v| {
            v.iter()
                .map(|(z, c)| {
                    assert!(c.scalar.is_integer(), "integral structure constants expected");
                    (*z, c.scalar.to_integer(), pack(&c.exponents))
                })
                .collect()
        })
        .collect();
    let br = |x: usize, terms: &[Term], out: &mut Vec<Term>| {
        for &(y, c, e) in terms {
            for &(z, d, f) in &compact[x * dim + y] {
                out.push((z, c * d, e + f));
            }
        }
    };
    let per_x = par::map_range(exec, dim, |x| {
        let mut bad = 0u64;
        let mut examples = Vec::new();
        let mut acc: Vec<Term> = Vec::new();
        for y in x + 1..dim {
            for z in y + 1..dim {
                acc.clear();
                br(x, &compact[y * dim + z], &mut acc);
                br(y, &compact[z * dim + x], &mut acc);
                br(z, &compact[x * dim + y], &mut acc);
                if acc.is_empty() {
                    continue;
                }
                acc.sort_unstable_by_key(|t| (t.0, t.2));
                let mut i = 0;
                let mut ok = true;
                while i < acc.len() {
                    let mut s = 0;
                    let mut j = i;
                    while j < acc.len() && acc[j].0 == acc[i].0 && acc[j].2 == acc[i].2 {
                        s += acc[j].1;
                        j += 1;
                    }
                    if s != 0 {
                        ok = false;
                        break;
                    }
                    i = j;
                }
                if !ok {
                    bad += 1;
                    if examples.len() < 10 {
                        examples.push((x, y, z));
                    }
                }
            }
        }
        (bad, examples)
    });
    let n = dim as u64;
    let mut report = JacobiReport { triples: n * n.saturating_sub(1) * n.saturating_sub(2) / 6, violations: 0, examples: Vec::new() };
    for (bad, ex) in per_x {
        report.violations += bad;
        for (x, y, z) in ex {
            if report.examples.len() < 10 {
                let l = |i: usize| table.label(table.basis[i]);
                report.examples.push((l(x), l(y), l(z)));
            }
        }
    }
    report
}

/// `|Ω*|·rank − Σ_{i∈Ω*} rank span{α : n(k(α))_i = 0}`.
pub fn abelianisation_dim(alg: &Alia) -> Result<usize> {
    let sys = &alg.sys;
    let mut total = 0usize;
    for i in alg.omega_star() {
        let mut span: Vec<Vec<Rat>> = Vec::new();
        for a in 0..sys.num_roots() {
            let k = alg.spec.grading.k(sys, a);
            if k % 2 != 0 {
                continue;
            }
            if alg.model.n_map(k)?.residues[i] == 0 {
                span.push(sys.roots[a].iter().map(|&c| Rat::from_integer(c.into())).collect());
            }
        }
        total += sys.rank() - rational_rank(span);
    }
    Ok(total)
}

fn rational_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot[col];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dense univariate polynomials over ℚ, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct UPoly(Vec<Rat>);

impl UPoly {
    fn zero() -> UPoly {
        UPoly(Vec::new())
    }

    fn constant(c: Rat) -> UPoly {
        UPoly(vec![c]).trim()
    }

    fn trim(mut self) -> UPoly {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly(v).trim()
    }

    fn sub_scaled(&self, o: &UPoly, q: &UPoly) -> UPoly {
        let p = o.mul(q);
        let n = self.0.len().max(p.0.len());
        let mut v = vec![Rat::zero(); n];
        for (i, a) in self.0.iter().enumerate() {
            v[i] += a;
        }
        for (i, b) in p.0.iter().enumerate() {
            v[i] -= b;
        }
        UPoly(v).trim()
    }

    fn quotient(&self, d: &UPoly) -> UPoly {
        let mut r = self.clone();
        let mut q = vec![Rat::zero(); self.0.len().saturating_sub(d.deg())];
        let lead = d.0.last().expect("nonzero divisor").clone();
        while !r.is_zero() && r.deg() >= d.deg() {
            let shift = r.deg() - d.deg();
            let c = r.0.last().unwrap() / &lead;
            q[shift] += &c;
            let mut m = vec![Rat::zero(); shift + 1];
            m[shift] = c;
            r = r.sub_scaled(d, &UPoly(m));
        }
        UPoly(q).trim()
    }
}

/// Dimension of `A/[A, A]` from the bracket table alone: the Hauptmoduln become
/// distinct affine functions `t − c_i` of one variable and the quotient of
/// `ℚ[t]^dim` by the span of all brackets is measured by echelon reduction.
pub fn abelianisation_dim_brute_force(table: &BracketTable) -> Result<usize> {
    let dim = table.dim();
    let factor = |i: usize| UPoly(vec![Rat::from_integer((-(i as i64)).into()), Rat::one()]);
    let monomial = |c: &MonoCoeff| -> Result<UPoly> {
        let mut p = UPoly::constant(Rat::new(c.scalar.numer().to_owned().into(), c.scalar.denom().to_owned().into()));
        for (i, e) in c.visible_exponents(table.pole).iter().enumerate() {
            if !e.is_integer() {
                return domain("half-integral exponents have no polynomial model");
            }
            for _ in 0..e.to_integer() {
                p = p.mul(&factor(i));
            }
        }
        Ok(p)
    };
    let mut gens: Vec<Vec<UPoly>> = Vec::new();
    for x in 0..dim {
        for y in x + 1..dim {
            let terms = table.entry(x, y);
            if terms.is_empty() {
                continue;
            }
            let mut v = vec![UPoly::zero(); dim];
            for (z, c) in terms {
                v[*z] = monomial(c)?;
            }
            gens.push(v);
        }
    }
    let mut total = 0usize;
    for p in 0..dim {
        loop {
            let live: Vec<usize> = (0..gens.len()).filter(|&g| !gens[g][p].is_zero()).collect();
            let Some(&m) = live.iter().min_by_key(|&&g| gens[g][p].deg()) else {
                return Err(AliaError::Verification(format!("brackets miss basis direction {}", p + 1)));
            };
            if live.len() == 1 {
                total += gens[m][p].deg();
                gens.swap_remove(m);
                break;
            }
            let pivot = gens[m].clone();
            for &g in &live {
                if g == m {
                    continue;
                }
                let q = gens[g][p].quotient(&pivot[p]);
                for c in p..dim {
                    gens[g][c] = gens[g][c].sub_scaled(&pivot[c], &q);
                }
            }
        }
        for g in gens.iter_mut() {
            // keep coefficients small
            if let Some(lead) = g.iter().find(|x| !x.is_zero()).map(|x| x.0.last().unwrap().clone()) {
                for x in g.iter_mut() {
                    for c in x.0.iter_mut() {
                        *c = &*c / &lead;
                    }
                }
            }
        }
        gens.retain(|g| g.iter().any(|x| !x.is_zero()));
    }
    Ok(total)
}

/// `{min(ν_i, k(α̃)/2 + 1) : i ∈ Ω*}`, sorted.
pub fn isomorphism_key(alg: &Alia) -> Vec<u64> {
    let hi = alg.spec.grading.k(&alg.sys, alg.sys.highest_root());
    let cap = (hi / 2 + 1).max(0) as u64;
    let mut key: Vec<u64> = alg.omega_star().into_iter().map(|i| (alg.model.nu[i] as u64).min(cap)).collect();
    key.sort_unstable();
    key
}

/// A map from the visible components of `a` to those of `b` under which the two
/// tables agree entry for entry, if one exists.
pub fn tables_equal_up_to_relabel(a: &BracketTable, b: &BracketTable) -> Option<Vec<(usize, usize)>> {
    if a.lie_type != b.lie_type || a.basis != b.basis {
        return None;
    }
    let vis = |t: &BracketTable| (0..t.ncomp).filter(|&i| Some(i) != t.pole).collect::<Vec<_>>();
    let (va, vb) = (vis(a), vis(b));
    if va.len() != vb.len() {
        return None;
    }
    for perm in permutations(va.len()) {
        let map: Vec<(usize, usize)> = (0..va.len()).map(|i| (va[i], vb[perm[i]])).collect();
        let same = (0..a.entries.len()).all(|e| {
            let (ea, eb) = (&a.entries[e], &b.entries[e]);
            ea.len() == eb.len()
                && ea.iter().zip(eb).all(|((za, ca), (zb, cb))| {
                    za == zb && ca.scalar == cb.scalar && map.iter().all(|&(i, j)| ca.exponents[i] == cb.exponents[j])
                })
        });
        if same {
            return Some(map);
        }
    }
    None
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointDims {
    /// `dim g^{⟨γ_i⟩}` per orbit generator.
    pub per_orbit: Vec<u64>,
    pub dim_g: u64,
    /// `dim g^Γ`.
    pub invariant: u64,
}

impl FixedPointDims {
    pub fn sum(&self) -> u64 {
        self.per_orbit.iter().sum()
    }
}

fn combine(per_orbit: Vec<u64>, dim_g: u64) -> Result<FixedPointDims> {
    let s: i64 = per_orbit.iter().sum::<u64>() as i64;
    let twice = s - (per_orbit.len() as i64 - 2) * dim_g as i64;
    if twice < 0 || twice % 2 != 0 {
        return Err(AliaError::Verification(format!("inconsistent fixed-point dimensions {per_orbit:?}")));
    }
    Ok(FixedPointDims { per_orbit, dim_g, invariant: (twice / 2) as u64 })
}

/// `dim g^{⟨γ_i⟩} = rank + #{α : n_i(k(α)) = 0}` and
/// `dim g^Γ = (Σ_i dim g^{⟨γ_i⟩} − (|Ω| − 2) dim g)/2`.
pub fn fixed_point_dims(model: &GroupModel, lie_type: LieType, grading: &DynkinGrading) -> Result<FixedPointDims> {
    let sys = RootSystem::new(lie_type);
    grading.fits(&sys)?;
    if !grading.is_even_on(&sys) {
        return domain("fixed-point dimensions need an even grading");
    }
    let mut per = vec![sys.rank() as u64; model.num_orbits()];
    for a in 0..sys.num_roots() {
        let nv = model.n_map(grading.k(&sys, a))?;
        for (i, r) in nv.residues.iter().enumerate() {
            if *r == 0 {
                per[i] += 1;
            }
        }
    }
    combine(per, sys.dim() as u64)
}

/// The same dimensions from the decomposition of `g` into `Sym^{2j}` under the
/// `sl₂` of the grading; `dim g^Γ` is read off the Molien series.
pub fn fixed_point_dims_oracle(model: &GroupModel, lie_type: LieType, grading: &DynkinGrading) -> Result<FixedPointDims> {
    let sys = RootSystem::new(lie_type);
    grading.fits(&sys)?;
    let mut mult: BTreeMap<i64, i64> = BTreeMap::new();
    *mult.entry(0).or_insert(0) += sys.rank() as i64;
    for a in 0..sys.num_roots() {
        *mult.entry(grading.k(&sys, a)).or_insert(0) += 1;
    }
    let top = *mult.keys().last().unwrap();
    if top % 2 != 0 || mult.keys().any(|k| k % 2 != 0) {
        return domain("oracle needs an even grading");
    }
    let get = |k: i64| mult.get(&k).copied().unwrap_or(0);
    let copies: Vec<(i64, i64)> = (0..=top / 2).map(|j| (j, get(2 * j) - get(2 * j + 2))).collect();
    if copies.iter().any(|(_, c)| *c < 0) {
        return domain("grading is not attached to an sl2-triple");
    }
    let per: Vec<u64> = model
        .nu
        .iter()
        .map(|&nu| {
            copies
                .iter()
                .map(|&(j, c)| c * (0..=2 * j).filter(|l| (j - l).rem_euclid(nu as i64) == 0).count() as i64)
                .sum::<i64>() as u64
        })
        .collect();
    let molien = model.molien_dims((2 * top) as usize + 2, Exec::Sequential)?;
    let invariant: i64 = copies.iter().map(|&(j, c)| c * molien[(2 * j) as usize] as i64).sum();
    let out = combine(per, sys.dim() as u64)?;
    if out.invariant as i64 != invariant {
        return Err(AliaError::Verification(format!(
            "character count gives dim g^Γ = {}, Molien gives {invariant}",
            out.invariant
        )));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootGraph {
    pub component: usize,
    pub vertices: Vec<Vec<i64>>,
    pub edges: Vec<(usize, usize)>,
    /// Set when the rank exceeds two and the picture is too large to be practical.
    pub too_large: bool,
}

/// Roots joined when `α + β ∈ Φ ∪ {0}` and `ω²_i(α, β) ≠ 0`.
pub fn rank2_graph(alg: &Alia, component: usize) -> Result<RootGraph> {
    if component >= alg.omega.ncomp {
        return domain(format!("component {} out of range", component + 1));
    }
    let sys = &alg.sys;
    let mut edges = Vec::new();
    for a in 0..sys.num_roots() {
        for b in a + 1..sys.num_roots() {
            if let Some(w) = alg.omega.get(a, b) {
                if !w[component].is_zero() {
                    edges.push((a, b));
                }
            }
        }
    }
    Ok(RootGraph { component, vertices: sys.roots.clone(), edges, too_large: sys.rank() > 2 })
}

/// `ω²_i` as an explicit half-integer, for display.
pub fn exponent_text(q: &Q) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom().abs())
    }
}

/// One line of a reference structure table: `row;col;coeff;monomial`, or
/// `opp;root;1;monomial` for the `ω²(α, −α)` header.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefEntry {
    pub row: Vec<i64>,
    pub col: Option<Vec<i64>>,
    pub coeff: i64,
    pub monomial: String,
}

pub fn parse_reference_table(text: &str) -> Result<Vec<RefEntry>> {
    let coords = |s: &str| -> Result<Vec<i64>> {
        s.split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|_| AliaError::Parse(format!("bad root {s:?}"))))
            .collect()
    };
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let parts: Vec<&str> = line.split(';').collect();
        if parts.len() != 4 {
            return Err(AliaError::Parse(format!("bad table line {line:?}")));
        }
        let coeff = parts[2].trim().parse().map_err(|_| AliaError::Parse(format!("bad coefficient in {line:?}")))?;
        let (row, col) = if parts[0] == "opp" { (coords(parts[1])?, None) } else { (coords(parts[0])?, Some(coords(parts[1])?)) };
        out.push(RefEntry { row, col, coeff, monomial: parts[3].trim().to_string() });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableComparison {
    pub entries: usize,
    pub monomial_mismatches: Vec<String>,
    pub magnitude_mismatches: Vec<String>,
    /// Nonzero brackets in scope that the reference does not list, and vice versa.
    pub coverage_mismatches: Vec<String>,
    /// Signs `s_α = s_{−α}` turning our constants into the reference ones.
    pub gauge: Option<Vec<i8>>,
    pub identity_gauge: bool,
}

impl TableComparison {
    pub fn monomials_ok(&self) -> bool {
        self.monomial_mismatches.is_empty() && self.coverage_mismatches.is_empty()
    }

    pub fn magnitudes_ok(&self) -> bool {
        self.magnitude_mismatches.is_empty()
    }

    pub fn signs_ok(&self) -> bool {
        self.gauge.is_some()
    }

    pub fn all_ok(&self) -> bool {
        self.monomials_ok() && self.magnitudes_ok() && self.signs_ok()
    }
}

/// Compares full monomials (pole component included), coefficient magnitudes,
/// and signs up to a diagonal gauge.
pub fn compare_with_reference(alg: &Alia, table: &BracketTable, refs: &[RefEntry]) -> TableComparison {
    let sys = &alg.sys;
    let mut cmp = TableComparison {
        entries: refs.len(),
        monomial_mismatches: Vec::new(),
        magnitude_mismatches: Vec::new(),
        coverage_mismatches: Vec::new(),
        gauge: None,
        identity_gauge: false,
    };
    let mut constraints = Vec::new();
    let mut listed = std::collections::BTreeSet::new();
    let full_square = refs.iter().any(|r| r.col.is_some() && r.row.iter().sum::<i64>() < 0);
    for r in refs {
        let tag = format!("({}) ({})", coords_text(&r.row), r.col.as_deref().map_or("opp".into(), coords_text));
        let Some(a) = sys.index_of(&r.row) else {
            cmp.coverage_mismatches.push(format!("{tag}: unknown root"));
            continue;
        };
        let b = match &r.col {
            None => sys.neg(a),
            Some(c) => match sys.index_of(c) {
                Some(b) => b,
                None => {
                    cmp.coverage_mismatches.push(format!("{tag}: unknown root"));
                    continue;
                }
            },
        };
        let (Some(pa), Some(pb)) = (table.position(BasisElem::Root(a)), table.position(BasisElem::Root(b))) else {
            cmp.coverage_mismatches.push(format!("{tag}: odd degree"));
            continue;
        };
        let terms = table.entry(pa, pb);
        let Some((_, c)) = terms.first() else {
            cmp.coverage_mismatches.push(format!("{tag}: bracket is zero"));
            continue;
        };
        let mono = c.monomial_text(None);
        if mono != r.monomial {
            cmp.monomial_mismatches.push(format!("{tag}: {mono} vs {}", r.monomial));
        }
        if r.col.is_none() {
            continue;
        }
        listed.insert((a, b));
        if b == sys.neg(a) {
            let want = if sys.is_positive(a) { 1 } else { -1 };
            if r.coeff != want {
                cmp.magnitude_mismatches.push(format!("{tag}: Cartan coefficient {}", r.coeff));
            }
            continue;
        }
        let ours = c.scalar.to_integer();
        if ours.abs() != r.coeff.abs() {
            cmp.magnitude_mismatches.push(format!("{tag}: {ours} vs {}", r.coeff));
        }
        constraints.push((a, b, ours.signum() != r.coeff.signum()));
    }
    for a in 0..sys.num_roots() {
        for b in 0..sys.num_roots() {
            let in_scope = full_square || (sys.is_positive(a) && sys.is_positive(b));
            let nonzero = b == sys.neg(a) || sys.sum(a, b).is_some();
            let present = table.position(BasisElem::Root(a)).is_some() && table.position(BasisElem::Root(b)).is_some();
            if in_scope && nonzero && present && !listed.contains(&(a, b)) {
                cmp.coverage_mismatches.push(format!("({}) ({}): not listed", sys.coords_text(a), sys.coords_text(b)));
            }
        }
    }
    cmp.identity_gauge = constraints.iter().all(|c| !c.2);
    cmp.gauge = crate::rootsystem::solve_sign_gauge(sys, &constraints);
    cmp
}

/// The `(N+1) × (N+1)` array of `𝕀^{ω¹}` for type `A_N`: above the diagonal
/// `ω¹(α_r + … + α_{c−1})`, below it `ω¹(−(α_c + … + α_{r−1}))`.
pub fn normal_form_matrix(sys: &RootSystem, nf: &crate::rootsystem::NormalForm) -> Result<Vec<Vec<String>>> {
    if sys.lie_type.family != crate::rootsystem::Family::A {
        return domain("matrix notation is defined for type A");
    }
    let n = sys.rank() + 1;
    let mut out = vec![vec![String::new(); n]; n];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            if r == c {
                *cell = "*".to_string();
                continue;
            }
            let (lo, hi, sign) = if r < c { (r, c, 1) } else { (c, r, -1) };
            let coords: Vec<i64> = (0..sys.rank()).map(|j| if (lo..hi).contains(&j) { sign } else { 0 }).collect();
            let a = sys.index_of(&coords).expect("interval sums are roots in type A");
            let m = MonoCoeff { scalar: Q::one(), exponents: nf.values[a].clone() };
            *cell = m.monomial_text(None);
        }
    }
    Ok(out)
}
