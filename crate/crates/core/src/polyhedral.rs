//! Binary polyhedral groups in `SU(2)`, their exceptional orbits, ground forms
//! and characters, the periodic map `n`, the invariant generators `P_k`, and
//! dimension oracles for the ring of invariants.

use crate::bipoly::{BiForm, LocElem, Mat};
use crate::error::{domain, internal, AliaError, Result};
use crate::exactnum::{rat, CycNum, Rat};
use crate::par::{self, Exec};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    Cyclic(u32),
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl GroupKind {
    pub fn validate(self) -> Result<GroupKind> {
        match self {
            GroupKind::Cyclic(0) => domain("cyclic groups need n >= 1"),
            GroupKind::Dihedral(n) if n < 2 => domain("dihedral groups need n >= 2"),
            k => Ok(k),
        }
    }

    /// Cyclotomic order holding every constant of the group's matrices and forms.
    pub fn working_order(self) -> u32 {
        match self {
            GroupKind::Cyclic(n) | GroupKind::Dihedral(n) => 4 * n,
            GroupKind::Tetrahedral => 12,
            GroupKind::Octahedral => 24,
            GroupKind::Icosahedral => 20,
        }
    }

    /// The groups whose forms `P_i^{ν_i}` are absolute invariants.
    pub fn has_trivial_chi(self) -> bool {
        match self {
            GroupKind::Cyclic(_) => false,
            GroupKind::Dihedral(n) => n % 2 == 0,
            _ => true,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic(n) => write!(f, "C{n}"),
            GroupKind::Dihedral(n) => write!(f, "D{n}"),
            GroupKind::Tetrahedral => f.write_str("T"),
            GroupKind::Octahedral => f.write_str("O"),
            GroupKind::Icosahedral => f.write_str("Y"),
        }
    }
}

impl FromStr for GroupKind {
    type Err = AliaError;

    fn from_str(s: &str) -> Result<GroupKind> {
        let t = s.trim();
        let parse_n = |rest: &str| {
            rest.parse::<u32>()
                .map_err(|_| AliaError::Parse(format!("bad group parameter in {t:?}")))
        };
        let kind = match t {
            "T" | "t" => GroupKind::Tetrahedral,
            "O" | "o" => GroupKind::Octahedral,
            "Y" | "y" | "I" | "i" => GroupKind::Icosahedral,
            _ if t.len() > 1 && (t.starts_with('C') || t.starts_with('c')) => GroupKind::Cyclic(parse_n(&t[1..])?),
            _ if t.len() > 1 && (t.starts_with('D') || t.starts_with('d')) => GroupKind::Dihedral(parse_n(&t[1..])?),
            _ => return Err(AliaError::Parse(format!("unknown group {t:?}"))),
        };
        kind.validate()
    }
}

/// Selects the pole orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitSel {
    Smallest,
    Largest,
    Index(usize),
}

impl FromStr for OrbitSel {
    type Err = AliaError;

    /// `smallest`, `largest`, or a 1-based orbit index.
    fn from_str(s: &str) -> Result<OrbitSel> {
        match s.trim() {
            "smallest" => Ok(OrbitSel::Smallest),
            "largest" => Ok(OrbitSel::Largest),
            t => match t.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(OrbitSel::Index(i - 1)),
                _ => Err(AliaError::Parse(format!("bad orbit selector {t:?}"))),
            },
        }
    }
}

/// The character of a ground form, by its values on the generators.
pub type Character = Vec<CycNum>;

#[derive(Clone, Debug)]
pub struct GroundForm {
    pub orbit: usize,
    pub form: BiForm,
    pub character: Character,
}

#[derive(Clone, Debug)]
pub struct GroupModel {
    pub kind: GroupKind,
    pub nu: Vec<u32>,
    pub d: Vec<u32>,
    pub order_gamma: u32,
    pub gcd_d: u32,
    pub lcm_nu: u32,
    pub generators: Vec<Mat<CycNum>>,
    pub elements: Vec<Mat<CycNum>>,
    forms: Vec<GroundForm>,
}

fn c(n: u32, v: i64) -> CycNum {
    CycNum::from_int(n, v)
}

fn z(n: u32, k: i64) -> CycNum {
    CycNum::root_of_unity(n, k)
}

fn half(x: &CycNum) -> CycNum {
    x.scale_rat(&rat(1, 2))
}

fn mat2(a: CycNum, b: CycNum, cc: CycNum, d: CycNum) -> Mat<CycNum> {
    Mat::from_rows(vec![vec![a, b], vec![cc, d]])
}

fn poly20(coeffs: &[(i64, i64)]) -> CycNum {
    // Σ c/5 ζ_20^{e}
    let mut acc = CycNum::zero(20);
    for &(cf, e) in coeffs {
        acc = &acc + &z(20, e).scale_rat(&rat(cf, 5));
    }
    acc
}

fn mat_key(m: &Mat<CycNum>) -> String {
    m.entries().iter().map(|e| e.canonical()).collect::<Vec<_>>().join("|")
}

impl GroupModel {
    pub fn build(kind: GroupKind) -> Result<GroupModel> {
        let kind = kind.validate()?;
        let (nu, d, order_gamma, gcd_d, lcm_nu) = match kind {
            GroupKind::Cyclic(n) => (vec![n, n], vec![1, 1], n, 1, n),
            GroupKind::Dihedral(n) => {
                let (dd, nn) = if n % 2 == 0 { (2, n) } else { (1, 2 * n) };
                (vec![n, 2, 2], vec![2, n, n], 2 * n, dd, nn)
            }
            GroupKind::Tetrahedral => (vec![3, 3, 2], vec![4, 4, 6], 12, 2, 6),
            GroupKind::Octahedral => (vec![4, 3, 2], vec![6, 8, 12], 24, 2, 12),
            GroupKind::Icosahedral => (vec![5, 3, 2], vec![12, 20, 30], 60, 2, 30),
        };
        let generators = generator_matrices(kind);
        let forms = ground_form_table(kind);
        let mut model = GroupModel {
            kind,
            nu,
            d,
            order_gamma,
            gcd_d,
            lcm_nu,
            generators,
            elements: Vec::new(),
            forms,
        };
        model.check_relations()?;
        model.elements = model.enumerate()?;
        Ok(model)
    }

    fn check_relations(&self) -> Result<()> {
        let n = self.kind.working_order();
        let minus = Mat::from_ints(n, &[&[-1, 0], &[0, -1]]);
        let a = &self.generators[0];
        if a.pow(self.nu[0]) != minus {
            return internal(format!("{}: a^{} != -Id", self.kind, self.nu[0]));
        }
        if self.generators.len() == 2 {
            let b = &self.generators[1];
            let cc = self.third_generator();
            if b.pow(self.nu[1]) != minus || cc.pow(self.nu[2]) != minus {
                return internal(format!("{}: defining relations fail", self.kind));
            }
            if a.mul(b).mul(&cc) != minus {
                return internal(format!("{}: abc != -Id", self.kind));
            }
        }
        for g in &self.generators {
            if !g.det().is_one() {
                return internal(format!("{}: generator not in SL(2)", self.kind));
            }
        }
        Ok(())
    }

    /// `c = -(ab)^{-1}` for the noncyclic groups.
    pub fn third_generator(&self) -> Mat<CycNum> {
        let ab = self.generators[0].mul(&self.generators[1]);
        ab.adjugate2().neg()
    }

    fn enumerate(&self) -> Result<Vec<Mat<CycNum>>> {
        let n = self.kind.working_order();
        let target = 2 * self.order_gamma as usize;
        let id = Mat::from_ints(n, &[&[1, 0], &[0, 1]]);
        let mut seen = HashSet::new();
        seen.insert(mat_key(&id));
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for h in &self.generators {
                let p = g.mul(h);
                if seen.insert(mat_key(&p)) {
                    out.push(p.clone());
                    queue.push_back(p);
                    if out.len() > target {
                        return internal(format!("{}: closure exceeds {target} elements", self.kind));
                    }
                }
            }
        }
        if out.len() != target {
            return internal(format!("{}: closure has {} elements, expected {target}", self.kind, out.len()));
        }
        Ok(out)
    }

    pub fn num_orbits(&self) -> usize {
        self.nu.len()
    }

    pub fn order_binary(&self) -> usize {
        2 * self.order_gamma as usize
    }

    pub fn orbit_index(&self, sel: OrbitSel) -> Result<usize> {
        match sel {
            OrbitSel::Smallest => Ok((0..self.d.len()).min_by_key(|&i| (self.d[i], i)).unwrap()),
            OrbitSel::Largest => Ok((0..self.d.len()).max_by_key(|&i| (self.d[i], std::cmp::Reverse(i))).unwrap()),
            OrbitSel::Index(i) if i < self.num_orbits() => Ok(i),
            OrbitSel::Index(i) => domain(format!("{} has {} orbits, index {} requested", self.kind, self.num_orbits(), i + 1)),
        }
    }

    /// Σ d_i = (|Ω| − 2)|Γ| + 2 and the per-orbit identities.
    pub fn check_counting(&self) -> bool {
        let sum: u32 = self.d.iter().sum();
        let omega = self.num_orbits() as i64;
        let per_orbit = self.nu.iter().zip(&self.d).all(|(n, d)| n * d == self.order_gamma);
        let g = self.d.iter().fold(0u32, |a, &b| num_integer::gcd(a, b));
        let l = self.nu.iter().fold(1u32, |a, &b| num_integer::lcm(a, b));
        per_orbit
            && sum as i64 == (omega - 2) * self.order_gamma as i64 + 2
            && self.gcd_d * self.lcm_nu == self.order_gamma
            && g == self.gcd_d
            && l == self.lcm_nu
    }

    /// Ground forms with their tabulated characters, re-verified by substitution.
    pub fn ground_forms(&self) -> Result<&[GroundForm]> {
        for gf in &self.forms {
            for (g, chi) in self.generators.iter().zip(&gf.character) {
                if gf.form.substitute(g) != gf.form.scale(chi) {
                    return Err(AliaError::Verification(format!(
                        "{}: ground form {} does not transform by its character",
                        self.kind,
                        gf.orbit + 1
                    )));
                }
            }
        }
        Ok(&self.forms)
    }

    pub fn ground_form(&self, i: usize) -> &BiForm {
        &self.forms[i].form
    }

    pub fn character(&self, i: usize) -> &Character {
        &self.forms[i].character
    }

    /// `n(k)` with residues `(k/2) mod ν_i`.
    pub fn n_map(&self, k: i64) -> Result<NVec> {
        if k % 2 != 0 {
            return domain(format!("n(k) needs even k, got {k}"));
        }
        let h = k / 2;
        Ok(NVec { residues: self.nu.iter().map(|&v| h.rem_euclid(v as i64)).collect(), halved: false })
    }

    /// The convention of the printed table: identical to [`GroupModel::n_map`]
    /// except for `C_{2m}`, where residues are taken mod `m`.
    pub fn n_map_tabulated(&self, k: i64) -> Result<NVec> {
        match self.kind {
            GroupKind::Cyclic(n) if n % 2 == 0 => {
                if k % 2 != 0 {
                    return domain(format!("n(k) needs even k, got {k}"));
                }
                let m = (n / 2) as i64;
                let r = (k / 2).rem_euclid(m);
                Ok(NVec { residues: vec![r, r], halved: true })
            }
            _ => self.n_map(k),
        }
    }

    /// `ℓ = (k − Σ n_i d_i)/|Γ|`.
    pub fn ell(&self, k: i64) -> Result<i64> {
        let nv = self.n_map(k)?;
        let s: i64 = nv.residues.iter().zip(&self.d).map(|(n, &d)| n * d as i64).sum();
        let num = k - s;
        if num.rem_euclid(self.order_gamma as i64) != 0 {
            return internal(format!("{}: non-integral exponent for k = {k}", self.kind));
        }
        Ok(num / self.order_gamma as i64)
    }

    /// The pole form `P_j` as a shared value for localised elements.
    pub fn pole(&self, j: usize) -> Arc<BiForm> {
        Arc::new(self.forms[j].form.clone())
    }

    /// `P_k = P^ℓ Π P_i^{n(k)_i}` with `P = P_j^{ν_j}`, verified invariant and of degree `k`.
    pub fn p_k(&self, j: usize, k: i64) -> Result<LocElem> {
        let pole = self.pole(j);
        self.p_k_with_pole(&pole, j, k)
    }

    pub fn p_k_with_pole(&self, pole: &Arc<BiForm>, j: usize, k: i64) -> Result<LocElem> {
        let e = self.p_k_unchecked(pole, j, k)?;
        if e.degree() != Some(k) {
            return internal(format!("{}: P_{k} has wrong degree", self.kind));
        }
        if !self.p_k_character(j, k)?.iter().all(|v| v.is_one()) {
            return internal(format!("{}: P_{k} is not invariant", self.kind));
        }
        Ok(e)
    }

    /// Character of `P_k` on the generators, from the ground-form characters.
    pub fn p_k_character(&self, j: usize, k: i64) -> Result<Character> {
        let nv = self.n_map(k)?;
        let ell = self.ell(k)?;
        let n = self.kind.working_order();
        let mut acc = vec![CycNum::one(n); self.generators.len()];
        let mut apply = |i: usize, e: i64| -> Result<()> {
            for (a, v) in acc.iter_mut().zip(&self.forms[i].character) {
                *a = &*a * &v.pow(e)?;
            }
            Ok(())
        };
        for (i, &r) in nv.residues.iter().enumerate() {
            apply(i, r)?;
        }
        apply(j, self.nu[j] as i64 * ell)?;
        Ok(acc)
    }

    /// Invariance of `P_k` by direct substitution under every generator.
    pub fn p_k_invariant_by_substitution(&self, j: usize, k: i64) -> Result<bool> {
        let e = self.p_k(j, k)?;
        for g in &self.generators {
            if e.substitute(g)? != e {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn p_k_unchecked(&self, pole: &Arc<BiForm>, j: usize, k: i64) -> Result<LocElem> {
        let nv = self.n_map(k)?;
        let ell = self.ell(k)?;
        let mut num = BiForm::constant(CycNum::one(1));
        for (i, &r) in nv.residues.iter().enumerate() {
            if r > 0 {
                num = num.mul(&self.forms[i].form.pow(r as u32));
            }
        }
        let nj = self.nu[j] as i64;
        if ell >= 0 {
            num = num.mul(&self.forms[j].form.pow((nj * ell) as u32));
            Ok(LocElem::new(num, pole, 0))
        } else {
            Ok(LocElem::new(num, pole, (-nj * ell) as u32))
        }
    }

    /// Hauptmodul `𝕀_i = P_i^{ν_i} / P_j^{ν_j}`.
    pub fn hauptmodul(&self, j: usize, i: usize) -> LocElem {
        let pole = self.pole(j);
        LocElem::new(self.forms[i].form.pow(self.nu[i]), &pole, self.nu[j])
    }

    /// Dimensions of degree-`k` invariant forms in `ℂ[X, Y]` for `k = 0..=kmax`,
    /// by averaging `tr Sym^k(g)` over the group.
    pub fn molien_dims(&self, kmax: usize, exec: Exec) -> Result<Vec<u64>> {
        let mut classes: BTreeMap<String, (CycNum, u64)> = BTreeMap::new();
        for g in &self.elements {
            let t = g.get(0, 0) + g.get(1, 1);
            classes.entry(t.canonical()).or_insert((t, 0)).1 += 1;
        }
        let classes: Vec<(CycNum, u64)> = classes.into_values().collect();
        let n = self.kind.working_order();
        let rows: Vec<Vec<CycNum>> = par::map(exec, &classes, |(t, mult)| {
            let m = CycNum::from_int(n, *mult as i64);
            let mut out = Vec::with_capacity(kmax + 1);
            let mut prev = CycNum::zero(n);
            let mut cur = CycNum::one(n);
            for _ in 0..=kmax {
                out.push(&cur * &m);
                let next = &(t * &cur) - &prev;
                prev = cur;
                cur = next;
            }
            out
        });
        let total = self.elements.len() as i64;
        (0..=kmax)
            .map(|k| {
                let mut acc = CycNum::zero(n);
                for r in &rows {
                    acc = &acc + &r[k];
                }
                let v = acc
                    .as_rat()
                    .map(|r| r / Rat::from_integer(total.into()))
                    .filter(|r| r.is_integer())
                    .and_then(|r| r.to_integer().to_u64())
                    .ok_or_else(|| AliaError::Internal(format!("{}: non-integral Molien coefficient at {k}", self.kind)))?;
                Ok(v)
            })
            .collect()
    }

    pub fn invariant_dimension(&self, k: usize) -> Result<u64> {
        Ok(self.molien_dims(k, Exec::Sequential)?[k])
    }

    /// Counts monomials `𝕀^a P_k` that are polynomial: `max(ℓ(k) + 1, 0)`.
    pub fn generator_count(&self, k: i64) -> Result<u64> {
        if k % 2 != 0 {
            return Ok(0);
        }
        Ok((self.ell(k)? + 1).max(0) as u64)
    }

    /// Values of a character on every element, by evaluating a relative invariant.
    fn character_order(chi: &[CycNum]) -> u32 {
        let mut acc: Vec<CycNum> = chi.to_vec();
        let mut k = 1;
        while !acc.iter().all(|v| v.is_one()) {
            acc = acc.iter().zip(chi).map(|(a, b)| a * b).collect();
            k += 1;
            assert!(k <= 1000, "character of unbounded order");
        }
        k
    }

    /// Keys of the derived subgroup `[BΓ, BΓ]`.
    fn derived_subgroup(&self) -> HashSet<String> {
        let inv = |g: &Mat<CycNum>| g.adjugate2();
        let mut gens: Vec<Mat<CycNum>> = Vec::new();
        let mut seen = HashSet::new();
        for g in &self.elements {
            for h in &self.elements {
                let cm = g.mul(h).mul(&inv(g)).mul(&inv(h));
                if seen.insert(mat_key(&cm)) {
                    gens.push(cm);
                }
            }
        }
        // commutators already include the identity; close under products
        let mut queue: VecDeque<Mat<CycNum>> = gens.iter().cloned().collect();
        while let Some(g) = queue.pop_front() {
            for h in &gens {
                let p = g.mul(h);
                if seen.insert(mat_key(&p)) {
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// Order of the abelianisation of `BΓ`, from the derived subgroup.
    pub fn abelianization_order(&self) -> usize {
        self.elements.len() / self.derived_subgroup().len()
    }

    /// Order and exponent of the abelianisations of `Γ` and of `BΓ`.
    pub fn abelianizations(&self) -> (Abelianization, Abelianization) {
        let derived = self.derived_subgroup();
        let minus = self.elements[0].neg();
        let mut projective = derived.clone();
        for k in &derived {
            let g = self.elements.iter().find(|e| &mat_key(e) == k).expect("derived elements lie in the group");
            projective.insert(mat_key(&g.mul(&minus)));
        }
        let summary = |sub: &HashSet<String>| {
            let exponent = self
                .elements
                .iter()
                .map(|g| {
                    let mut p = g.clone();
                    let mut r = 1;
                    while !sub.contains(&mat_key(&p)) {
                        p = p.mul(g);
                        r += 1;
                    }
                    r
                })
                .max()
                .unwrap_or(1);
            Abelianization { order: self.elements.len() / sub.len(), exponent }
        };
        (summary(&projective), summary(&derived))
    }

    /// Character identities relating the ground forms to the group.
    pub fn character_checks(&self) -> Result<CharacterReport> {
        let forms = self.ground_forms()?;
        let n = self.kind.working_order();
        let ngen = self.generators.len();
        let pow = |chi: &Character, e: i64| -> Result<Character> { chi.iter().map(|v| v.pow(e)).collect() };
        let prod = |a: &Character, b: &Character| -> Character { a.iter().zip(b).map(|(x, y)| x * y).collect() };
        let one: Character = vec![CycNum::one(n); ngen];
        let mut report = CharacterReport { group: self.kind.to_string(), items: Vec::new() };

        let chi = pow(&forms[0].character, self.nu[0] as i64)?;
        let mut same = true;
        for (i, f) in forms.iter().enumerate() {
            if pow(&f.character, self.nu[i] as i64)? != chi {
                same = false;
            }
        }
        report.push("chi_i^nu_i equal for all orbits", same, String::new());
        let all = forms.iter().fold(one.clone(), |acc, f| prod(&acc, &f.character));
        let rhs = pow(&chi, self.num_orbits() as i64 - 2)?;
        report.push("product of chi_i equals chi^(|Omega|-2)", all == rhs, String::new());

        let ord = Self::character_order(&chi);
        report.push("order of chi is 2/d", ord * self.gcd_d == 2, format!("order {ord}, d = {}", self.gcd_d));

        // subgroup generated by the χ_i
        let mut group: Vec<Character> = vec![one.clone()];
        let mut keys: HashSet<String> = HashSet::new();
        let ckey = |c: &Character| c.iter().map(|v| v.canonical()).collect::<Vec<_>>().join("|");
        keys.insert(ckey(&one));
        let mut idx = 0;
        while idx < group.len() {
            let cur = group[idx].clone();
            for f in forms {
                let p = prod(&cur, &f.character);
                if keys.insert(ckey(&p)) {
                    group.push(p);
                }
            }
            idx += 1;
        }
        let ab = self.abelianization_order();
        report.push(
            "characters generate Hom(BG, C*)",
            group.len() == ab,
            format!("generated {}, abelianisation {}", group.len(), ab),
        );
        let hom_gamma = ab / ord as usize;
        let prod_nu: u32 = self.nu.iter().product();
        report.push(
            "nu |Hom(G, C*)| = product of nu_i",
            self.lcm_nu as usize * hom_gamma == prod_nu as usize,
            format!("{} * {} vs {}", self.lcm_nu, hom_gamma, prod_nu),
        );

        let mut chi_powers: Vec<Character> = vec![one.clone()];
        for _ in 1..ord {
            let next = prod(chi_powers.last().unwrap(), &chi);
            chi_powers.push(next);
        }
        let mut ok = true;
        let mut detail = String::new();
        let span = 2 * self.lcm_nu as i64;
        for k in (-span..=span).step_by(2) {
            let nv = self.n_map(k)?;
            let mut c = one.clone();
            for (i, &r) in nv.residues.iter().enumerate() {
                c = prod(&c, &pow(&forms[i].character, r)?);
            }
            if !chi_powers.contains(&c) {
                ok = false;
                detail = format!("fails at k = {k}");
                break;
            }
        }
        report.push("n(k) lies in the character kernel", ok, detail);
        Ok(report)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            group: self.kind.to_string(),
            field_order: self.kind.working_order(),
            nu: self.nu.clone(),
            d: self.d.clone(),
            order_gamma: self.order_gamma,
            order_binary: self.elements.len() as u32,
            gcd_d: self.gcd_d,
            lcm_nu: self.lcm_nu,
            generators: self
                .generators
                .iter()
                .map(|g| (0..2).map(|i| (0..2).map(|j| g.get(i, j).clone()).collect()).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    pub group: String,
    pub field_order: u32,
    pub nu: Vec<u32>,
    pub d: Vec<u32>,
    pub order_gamma: u32,
    pub order_binary: u32,
    pub gcd_d: u32,
    pub lcm_nu: u32,
    pub generators: Vec<Vec<Vec<CycNum>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterReport {
    pub group: String,
    pub items: Vec<CheckItem>,
}

impl CharacterReport {
    fn push(&mut self, name: &str, ok: bool, detail: String) {
        self.items.push(CheckItem { name: name.into(), ok, detail });
    }

    pub fn all_ok(&self) -> bool {
        self.items.iter().all(|i| i.ok)
    }
}

/// An abelian group described by its order and exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    pub order: usize,
    pub exponent: usize,
}

/// Residues `n(k)_i`; `halved` marks the `C_{2m}` table convention.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NVec {
    pub residues: Vec<i64>,
    pub halved: bool,
}

impl fmt::Display for NVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn generator_matrices(kind: GroupKind) -> Vec<Mat<CycNum>> {
    match kind {
        GroupKind::Cyclic(n) => {
            let w = 4 * n;
            vec![mat2(z(w, 2), c(w, 0), c(w, 0), z(w, -2))]
        }
        GroupKind::Dihedral(n) => {
            let w = 4 * n;
            let a = mat2(z(w, 2), c(w, 0), c(w, 0), z(w, -2));
            let b = mat2(c(w, 0), z(w, n as i64 - 2), z(w, n as i64 + 2), c(w, 0));
            vec![a, b]
        }
        GroupKind::Tetrahedral => {
            let i = z(12, 3);
            let one = c(12, 1);
            let p = half(&(&i + &one));
            let m = half(&(&i - &one));
            let q = half(&(&one - &i));
            vec![
                mat2(p.clone(), p.clone(), m.clone(), q.clone()),
                mat2(p.clone(), m, p, q),
            ]
        }
        GroupKind::Octahedral => {
            let a = mat2(z(24, 3), c(24, 0), c(24, 0), &z(24, 1) - &z(24, 5));
            let w = z(24, 6);
            let one = c(24, 1);
            let p = half(&(&w + &one));
            let m = half(&(&w - &one));
            let q = half(&(&one - &w));
            vec![a, mat2(p.clone(), m, p, q)]
        }
        GroupKind::Icosahedral => {
            let a22 = &(&(&c(20, 1) - &z(20, 2)) + &z(20, 4)) - &z(20, 6);
            let a = mat2(z(20, 2), c(20, 0), c(20, 0), a22);
            let b = mat2(
                poly20(&[(2, 6), (1, 4), (1, 2), (2, 0)]),
                poly20(&[(-1, 6), (2, 4), (2, 2), (-1, 0)]),
                poly20(&[(4, 6), (-3, 4), (2, 2), (-1, 0)]),
                poly20(&[(-2, 6), (-1, 4), (-1, 2), (3, 0)]),
            );
            vec![a, b]
        }
    }
}

fn ground_form_table(kind: GroupKind) -> Vec<GroundForm> {
    let x = BiForm::x();
    let y = BiForm::y();
    let gf = |orbit: usize, form: BiForm, character: Character| GroundForm { orbit, form, character };
    match kind {
        GroupKind::Cyclic(n) => {
            let w = 4 * n;
            vec![gf(0, x, vec![z(w, 2)]), gf(1, y, vec![z(w, -2)])]
        }
        GroupKind::Dihedral(n) => {
            let w = 4 * n;
            let i_n = z(w, (n * n) as i64);
            let xn = x.pow(n);
            let yn = y.pow(n);
            vec![
                gf(0, x.mul(&y), vec![c(w, 1), c(w, -1)]),
                gf(1, xn.add(&yn), vec![c(w, -1), -&i_n]),
                gf(2, xn.sub(&yn), vec![c(w, -1), i_n]),
            ]
        }
        GroupKind::Tetrahedral => {
            let is3 = &z(12, 2).scale_rat(&rat(2, 1)) - &c(12, 1);
            let x4y4 = BiForm::from_int_terms(&[(1, 4, 0), (1, 0, 4)]);
            let mid = BiForm::monomial(is3.scale_rat(&rat(2, 1)), 2, 2);
            let z3 = z(12, 4);
            let z3s = z(12, 8);
            vec![
                gf(0, x4y4.add(&mid), vec![z3.clone(), z3s.clone()]),
                gf(1, x4y4.sub(&mid), vec![z3s, z3]),
                gf(2, BiForm::from_int_terms(&[(1, 5, 1), (-1, 1, 5)]), vec![c(12, 1), c(12, 1)]),
            ]
        }
        GroupKind::Octahedral => {
            let s = BiForm::from_int_terms(&[(1, 4, 0), (1, 0, 4)]);
            let p3 = BiForm::from_int_terms(&[(36, 4, 4)]).sub(&s.pow(2)).mul(&s).neg();
            vec![
                gf(0, BiForm::from_int_terms(&[(1, 5, 1), (-1, 1, 5)]), vec![c(24, -1), c(24, 1)]),
                gf(1, BiForm::from_int_terms(&[(1, 8, 0), (14, 4, 4), (1, 0, 8)]), vec![c(24, 1), c(24, 1)]),
                gf(2, p3, vec![c(24, -1), c(24, 1)]),
            ]
        }
        GroupKind::Icosahedral => {
            let triv = vec![c(20, 1), c(20, 1)];
            vec![
                gf(0, BiForm::from_int_terms(&[(1, 11, 1), (-11, 6, 6), (-1, 1, 11)]), triv.clone()),
                gf(
                    1,
                    BiForm::from_int_terms(&[(-1, 20, 0), (-228, 15, 5), (-494, 10, 10), (228, 5, 15), (-1, 0, 20)]),
                    triv.clone(),
                ),
                gf(
                    2,
                    BiForm::from_int_terms(&[
                        (1, 30, 0),
                        (-522, 25, 5),
                        (-10005, 20, 10),
                        (-10005, 10, 20),
                        (522, 5, 25),
                        (1, 0, 30),
                    ]),
                    triv,
                ),
            ]
        }
    }
}

/// The ground forms exactly as printed in the reference tables. They agree with
/// [`GroupModel::ground_forms`] except for the icosahedral forms of degree 20 and 30,
/// whose printed versions carry the opposite sign on the `X^{5a} Y^{5b}` terms with `a`, `b` odd.
pub fn printed_ground_forms(kind: GroupKind) -> Vec<BiForm> {
    match kind {
        GroupKind::Icosahedral => vec![
            BiForm::from_int_terms(&[(1, 11, 1), (-11, 6, 6), (-1, 1, 11)]),
            BiForm::from_int_terms(&[(-1, 20, 0), (228, 15, 5), (-494, 10, 10), (-228, 5, 15), (-1, 0, 20)]),
            BiForm::from_int_terms(&[
                (1, 30, 0),
                (522, 25, 5),
                (-10005, 20, 10),
                (-10005, 10, 20),
                (-522, 5, 25),
                (1, 0, 30),
            ]),
        ],
        k => ground_form_table(k).into_iter().map(|g| g.form).collect(),
    }
}

/// Kostant's parameters `(a, b, h)`.
pub fn kostant_params(kind: GroupKind) -> (u32, u32, u32) {
    match kind {
        GroupKind::Cyclic(n) => (2, 2 * n, 2 * n),
        GroupKind::Dihedral(n) => (4, 2 * n, 2 * n + 2),
        GroupKind::Tetrahedral => (6, 8, 12),
        GroupKind::Octahedral => (8, 12, 18),
        GroupKind::Icosahedral => (12, 20, 30),
    }
}

/// Power-series coefficients of `(1 + t^h) / ((1 − t^a)(1 − t^b))` up to `t^kmax`.
pub fn kostant_series(kind: GroupKind, kmax: usize) -> Vec<i64> {
    let (a, b, h) = kostant_params(kind);
    let mut num = vec![0i64; kmax + 1];
    num[0] = 1;
    if (h as usize) <= kmax {
        num[h as usize] += 1;
    }
    divide_geometric(&mut num, a as usize);
    divide_geometric(&mut num, b as usize);
    num
}

fn divide_geometric(s: &mut [i64], a: usize) {
    for k in a..s.len() {
        s[k] += s[k - a];
    }
}

/// Exponents of the tabulated numerators over `(1 − t^{|Γ|})²`.
pub fn tabulated_numerator(kind: GroupKind) -> Option<Vec<u32>> {
    match kind {
        GroupKind::Dihedral(n) if n % 2 == 0 => {
            let mut out: Vec<u32> = (0..=(2 * n - 4) / 4).map(|j| 4 * j).collect();
            let shifted: Vec<u32> = out.iter().map(|e| e + 2 * n + 2).collect();
            out.extend(shifted);
            out.sort_unstable();
            Some(out)
        }
        GroupKind::Tetrahedral => Some(vec![0, 6, 8, 14, 16, 22]),
        GroupKind::Octahedral => Some(vec![0, 8, 12, 16, 18, 20, 26, 28, 30, 34, 38, 46]),
        GroupKind::Icosahedral => Some(vec![
            0, 12, 20, 24, 30, 32, 36, 40, 42, 44, 48, 50, 52, 54, 56, 62, 64, 66, 68, 70, 74, 76, 78, 82, 86, 88, 94,
            98, 106, 118,
        ]),
        _ => None,
    }
}

/// Numerator exponents rebuilt from the character kernel: `Σ d_i (j mod ν_i)` for `j < ν`.
pub fn numerator_from_kernel(model: &GroupModel) -> Vec<u32> {
    let mut out: Vec<u32> = (0..model.lcm_nu)
        .map(|j| model.nu.iter().zip(&model.d).map(|(&v, &d)| d * (j % v)).sum())
        .collect();
    out.sort_unstable();
    out
}

/// Series of `N(t) / (1 − t^{|Γ|})²` up to `t^kmax`.
pub fn numerator_series(exponents: &[u32], order_gamma: u32, kmax: usize) -> Vec<i64> {
    let mut s = vec![0i64; kmax + 1];
    for &e in exponents {
        if (e as usize) <= kmax {
            s[e as usize] += 1;
        }
    }
    divide_geometric(&mut s, order_gamma as usize);
    divide_geometric(&mut s, order_gamma as usize);
    s
}

/// All groups exercised by the library's checks: the three exceptional groups and
/// the cyclic and dihedral families up to `nmax`.
pub fn group_grid(nmax: u32) -> Vec<GroupKind> {
    let mut out: Vec<GroupKind> = (1..=nmax).map(GroupKind::Cyclic).collect();
    out.extend((2..=nmax).map(GroupKind::Dihedral));
    out.extend([GroupKind::Tetrahedral, GroupKind::Octahedral, GroupKind::Icosahedral]);
    out
}
