//! The equivariant intertwiner built from a relative invariant form, symmetric
//! powers, and explicit matrix generators of automorphic Lie algebras of type A.

use crate::alia::{Alia, AliaSpec, BasisElem, PoleChoice};
use crate::bipoly::{BiForm, LocElem, Mat, RfMatrix, RingElem, Var};
use crate::error::{domain, AliaError, Result};
use crate::exactnum::{rat, CycNum};
use crate::par::{self, Exec};
use crate::polyhedral::GroupModel;
use crate::rootsystem::{solve_sign_gauge, ChevalleyConstants, DynkinGrading, Family, LieType, RootSystem};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Outcome of the checks run when an intertwiner is built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModautReport {
    pub squarefree: bool,
    pub det_one: bool,
    /// Every denominator is a power of `P`.
    pub poles_in_p: bool,
    /// Columns equivariant under each generator.
    pub equivariant: Vec<bool>,
    /// Left column of degree −1, right column of degree +1.
    pub column_degrees: bool,
    pub factorisation: bool,
}

impl ModautReport {
    pub fn all_ok(&self) -> bool {
        self.squarefree && self.det_one && self.poles_in_p && self.equivariant.iter().all(|b| *b) && self.column_degrees && self.factorisation
    }
}

/// `[[∂_Y P/(dP), X], [−∂_X P/(dP), Y]]` over `ℂ[X, Y, P^{-1}]`.
#[derive(Clone, Debug)]
pub struct Intertwiner2 {
    pub pole: Arc<BiForm>,
    pub matrix: RfMatrix,
    pub report: ModautReport,
}

impl Intertwiner2 {
    pub fn inverse(&self) -> RfMatrix {
        self.matrix.adjugate2()
    }
}

fn form_loc(f: BiForm, pole: &Arc<BiForm>) -> LocElem {
    LocElem::from_form(f, pole)
}

fn const_loc(c: &CycNum, pole: &Arc<BiForm>) -> LocElem {
    form_loc(BiForm::constant(c.clone()), pole)
}

/// Lifts a constant matrix into the localised ring.
pub fn lift_matrix(g: &Mat<CycNum>, pole: &Arc<BiForm>) -> RfMatrix {
    g.map(|c| const_loc(c, pole))
}

/// The intertwiner of a relative invariant form, with properties (det 1, poles,
/// equivariance under `generators`, column degrees, factorisation) verified.
pub fn build_modaut(p: &BiForm, generators: &[Mat<CycNum>]) -> Result<Intertwiner2> {
    let d = match p.degree() {
        Some(d) if d > 0 && p.is_homogeneous() => d,
        _ => return domain("the pole form must be a nonzero homogeneous form of positive degree"),
    };
    let squarefree = is_squarefree(p);
    if !squarefree {
        return domain(format!("{} has repeated linear factors", p.pretty()));
    }
    let pole = Arc::new(p.clone());
    let inv_d = rat(1, d as i64);
    let m11 = LocElem::new(p.partial(Var::Y).scale_rat(&inv_d), &pole, 1);
    let m21 = LocElem::new(p.partial(Var::X).scale_rat(&inv_d).neg(), &pole, 1);
    let matrix = Mat::from_rows(vec![
        vec![m11, form_loc(BiForm::x(), &pole)],
        vec![m21, form_loc(BiForm::y(), &pole)],
    ]);
    let det_one = matrix.det() == LocElem::one(&pole);
    let poles_in_p = matrix.entries().iter().all(|e| e.pole_power() <= 1);
    let mut equivariant = Vec::new();
    for g in generators {
        let moved = matrix.try_map(|e| e.substitute(g))?;
        let want = lift_matrix(g, &pole).mul(&matrix);
        equivariant.push(moved == want);
    }
    // a zero entry has every degree
    let has_degree = |e: &LocElem, k: i64| e.is_zero() || e.degree() == Some(k);
    let column_degrees = (0..2).all(|r| has_degree(matrix.get(r, 0), -1) && has_degree(matrix.get(r, 1), 1));
    let factorisation = factorisation_holds(p, d, &pole, &matrix);
    Ok(Intertwiner2 {
        pole: pole.clone(),
        matrix,
        report: ModautReport { squarefree, det_one, poles_in_p, equivariant, column_degrees, factorisation },
    })
}

/// `M = exp(X/Y·e) exp(−Y ∂_X P/(dP)·f) diag(Y^{-1}, Y)`, checked in `ℂ[X, Y, (PY)^{-1}]`.
fn factorisation_holds(p: &BiForm, d: u32, pole: &Arc<BiForm>, matrix: &RfMatrix) -> bool {
    let y = BiForm::y();
    let wide = Arc::new(p.mul(&y));
    let one = LocElem::one(&wide);
    let zero = LocElem::zero(&wide);
    let x_over_y = LocElem::new(BiForm::x().mul(p), &wide, 1);
    let f = LocElem::new(y.mul(&y).mul(&p.partial(Var::X)).scale_rat(&rat(-1, d as i64)), &wide, 1);
    let a = Mat::from_rows(vec![vec![one.clone(), x_over_y], vec![zero.clone(), one.clone()]]);
    let b = Mat::from_rows(vec![vec![one.clone(), zero.clone()], vec![f, one.clone()]]);
    let c = Mat::from_rows(vec![
        vec![LocElem::new(p.clone(), &wide, 1), zero.clone()],
        vec![zero, LocElem::from_form(y.clone(), &wide)],
    ]);
    let product = a.mul(&b).mul(&c);
    let widened = matrix.map(|e| e.widen(&wide, &y));
    let back = product.try_map(|e| e.narrow(pole, &y));
    product == widened && back.map(|m| &m == matrix).unwrap_or(false)
}

/// Univariate polynomials over a cyclotomic field, lowest degree first.
fn trim(mut v: Vec<CycNum>) -> Vec<CycNum> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_rem(a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor").inv().expect("nonzero leading coefficient");
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().unwrap() * &lead;
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&c * bi);
        }
        r = trim(r);
    }
    r
}

/// No repeated linear factors: `Y² ∤ P` and `gcd(P(t, 1), P'(t, 1))` is constant.
pub fn is_squarefree(p: &BiForm) -> bool {
    let Some(d) = p.degree() else { return false };
    let n = p.field_order();
    let mut f = vec![CycNum::zero(n); d as usize + 1];
    for (&(a, _), c) in p.terms() {
        f[a as usize] = c.clone();
    }
    let f = trim(f);
    // the multiplicity of the root at infinity is d − deg f(t)
    if d as usize + 1 - f.len() > 1 {
        return false;
    }
    let df: Vec<CycNum> = trim(f.iter().enumerate().skip(1).map(|(i, c)| c * &CycNum::from_int(n, i as i64)).collect());
    let (mut a, mut b) = (f, df);
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a.len() <= 1
}

/// Coefficients of the product of two polynomials in one variable.
fn poly_mul<R: RingElem>(a: &[R], b: &[R]) -> Vec<R> {
    let zero = a[0].zero_like();
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].radd(&x.rmul(y));
        }
    }
    out
}

/// `Sym^m(g)` on the monomial basis `x^m, x^{m−1}y, …, y^m`: column `j` holds the
/// coefficients of `(a x + c y)^{m−j} (b x + d y)^j`.
pub fn sym_power<R: RingElem>(g: &Mat<R>, m: u32) -> Mat<R> {
    let (a, b, c, d) = (g.get(0, 0), g.get(0, 1), g.get(1, 0), g.get(1, 1));
    let one = a.one_like();
    let n = m as usize + 1;
    let mut out = Mat::filled(n, n, a.zero_like());
    for j in 0..n {
        let mut col = vec![one.clone()];
        for _ in 0..(n - 1 - j) {
            col = poly_mul(&col, &[a.clone(), c.clone()]);
        }
        for _ in 0..j {
            col = poly_mul(&col, &[b.clone(), d.clone()]);
        }
        for (i, v) in col.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    out
}

/// Derivative of `Sym^m` on `h = diag(1, −1)`, `e = [[0,1],[0,0]]`, `f = [[0,0],[1,0]]`.
pub fn sym_derivative(m: u32, which: char) -> Mat<CycNum> {
    let n = m as usize + 1;
    let mut out = Mat::filled(n, n, CycNum::zero(1));
    for j in 0..n {
        match which {
            'h' => out.set(j, j, CycNum::from_int(1, m as i64 - 2 * j as i64)),
            'e' if j > 0 => out.set(j - 1, j, CycNum::from_int(1, j as i64)),
            'f' if j + 1 < n => out.set(j + 1, j, CycNum::from_int(1, (m as usize - j) as i64)),
            _ => {}
        }
    }
    out
}

/// Representations of `SL(2)` used here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatRep {
    Sym(u32),
    /// `Ad ∘ Sym^m` on the basis of [`sl_basis`].
    AdSym(u32),
}

impl MatRep {
    pub fn dim(self) -> usize {
        match self {
            MatRep::Sym(m) => m as usize + 1,
            MatRep::AdSym(m) => (m as usize + 1).pow(2) - 1,
        }
    }

    /// Image of a determinant-one matrix.
    pub fn image<R: RingElem>(self, g: &Mat<R>) -> Mat<R> {
        match self {
            MatRep::Sym(m) => sym_power(g, m),
            MatRep::AdSym(m) => {
                let s = sym_power(g, m);
                let si = sym_power(&g.adjugate2(), m);
                adjoint_matrix(&s, &si)
            }
        }
    }
}

pub fn adjoint_of(rep: MatRep) -> MatRep {
    match rep {
        MatRep::Sym(m) | MatRep::AdSym(m) => MatRep::AdSym(m),
    }
}

/// Basis of `sl(n)`: off-diagonal units `E_ij` in row-major order, then
/// `E_ii − E_{i+1,i+1}`.
pub fn sl_basis(n: usize) -> Vec<Mat<CycNum>> {
    let unit = |i: usize, j: usize, v: i64| {
        let mut m = Mat::filled(n, n, CycNum::zero(1));
        m.set(i, j, CycNum::from_int(1, v));
        m
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(unit(i, j, 1));
            }
        }
    }
    for i in 0..n - 1 {
        let mut h = unit(i, i, 1);
        h.set(i + 1, i + 1, CycNum::from_int(1, -1));
        out.push(h);
    }
    out
}

/// Coordinates of a traceless matrix in [`sl_basis`].
pub fn sl_coords<R: RingElem>(x: &Mat<R>) -> Vec<R> {
    let n = x.rows();
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(x.get(i, j).clone());
            }
        }
    }
    let mut acc = x.get(0, 0).zero_like();
    for i in 0..n - 1 {
        acc = acc.radd(x.get(i, i));
        out.push(acc.clone());
    }
    out
}

/// Matrix of `X ↦ s X s^{-1}` on `sl(n)`.
pub fn adjoint_matrix<R: RingElem>(s: &Mat<R>, s_inv: &Mat<R>) -> Mat<R> {
    let n = s.rows();
    let proto = s.get(0, 0);
    let basis = sl_basis(n);
    let dim = basis.len();
    let mut out = Mat::filled(dim, dim, proto.zero_like());
    for (k, b) in basis.iter().enumerate() {
        let bl = b.map(|c| proto.one_like().rscale(c));
        let img = s.mul(&bl).mul(s_inv);
        for (i, v) in sl_coords(&img).into_iter().enumerate() {
            out.set(i, k, v);
        }
    }
    out
}

/// Matrix of `ad x` on `sl(n)`.
pub fn ad_matrix(x: &Mat<CycNum>) -> Mat<CycNum> {
    let basis = sl_basis(x.rows());
    let dim = basis.len();
    let mut out = Mat::filled(dim, dim, CycNum::zero(1));
    for (k, b) in basis.iter().enumerate() {
        for (i, v) in sl_coords(&x.commutator(b)).into_iter().enumerate() {
            out.set(i, k, v);
        }
    }
    out
}

/// Chevalley basis of `sl(m+1)` adapted to our structure constants, and the
/// matrices `a_x = Sym^m(M)·x·Sym^m(M)^{-1}`, `ā_α = P_{k(α)} a_α`.
#[derive(Clone, Debug)]
pub struct ExplicitGenerators {
    pub m: u32,
    pub pole_orbit: usize,
    pub modaut: Intertwiner2,
    pub sym: RfMatrix,
    pub sym_inv: RfMatrix,
    pub sys: RootSystem,
    /// `x_α = s_α E_ij` per root.
    pub root_vectors: Vec<Mat<CycNum>>,
    /// `H_i = E_ii − E_{i+1,i+1}`.
    pub cartan: Vec<Mat<CycNum>>,
    pub a: Vec<RfMatrix>,
    pub abar: Vec<RfMatrix>,
    pub h: Vec<RfMatrix>,
}

/// Matrix unit position of a type-A root `α_i + … + α_{j−1}` (or its negative).
fn root_unit(coords: &[i64]) -> (usize, usize) {
    let lo = coords.iter().position(|&c| c != 0).expect("nonzero root");
    let hi = coords.iter().rposition(|&c| c != 0).unwrap() + 1;
    if coords[lo] > 0 {
        (lo, hi)
    } else {
        (hi, lo)
    }
}

impl ExplicitGenerators {
    pub fn new(model: &GroupModel, pole_orbit: usize, m: u32, exec: Exec) -> Result<ExplicitGenerators> {
        if !(1..=4).contains(&m) {
            return domain("symmetric powers 1..=4 are supported");
        }
        if pole_orbit >= model.num_orbits() {
            return domain(format!("pole orbit {} out of range", pole_orbit + 1));
        }
        let p = model.ground_forms()?[pole_orbit].form.clone();
        let modaut = build_modaut(&p, &model.generators)?;
        let pole = modaut.pole.clone();
        let sym = sym_power(&modaut.matrix, m);
        let sym_inv = sym_power(&modaut.inverse(), m);
        let n = m as usize + 1;
        let sys = RootSystem::new(LieType::new(Family::A, m as usize)?);
        let eps = ChevalleyConstants::new(&sys);
        let unit = |(i, j): (usize, usize)| {
            let mut u = Mat::filled(n, n, CycNum::zero(1));
            u.set(i, j, CycNum::one(1));
            u
        };
        // signs turning matrix units into a basis with our constants
        let mut constraints = Vec::new();
        for a in 0..sys.num_roots() {
            for b in 0..sys.num_roots() {
                if let Some(c) = sys.sum(a, b) {
                    let br = unit(root_unit(sys.root(a))).commutator(&unit(root_unit(sys.root(b))));
                    let (i, j) = root_unit(sys.root(c));
                    let unit_eps = br.get(i, j).as_rat().expect("rational");
                    constraints.push((a, b, (unit_eps < rat(0, 1)) != (eps.value(a, b) < 0)));
                }
            }
        }
        let signs = solve_sign_gauge(&sys, &constraints)
            .ok_or_else(|| AliaError::Internal("no Chevalley basis of matrix units".into()))?;
        let root_vectors: Vec<Mat<CycNum>> = (0..sys.num_roots())
            .map(|a| unit(root_unit(sys.root(a))).map(|c| c.scale_rat(&rat(signs[a] as i64, 1))))
            .collect();
        let cartan: Vec<Mat<CycNum>> = (0..m as usize)
            .map(|i| {
                let mut h = unit((i, i));
                h.set(i + 1, i + 1, CycNum::from_int(1, -1));
                h
            })
            .collect();
        let conj = |x: &Mat<CycNum>| sym.mul(&lift_matrix(x, &pole)).mul(&sym_inv);
        let a: Vec<RfMatrix> = par_map(exec, &root_vectors, |x| conj(x));
        let h: Vec<RfMatrix> = cartan.iter().map(&conj).collect();
        let grading = DynkinGrading::principal(m as usize);
        let abar = (0..sys.num_roots())
            .map(|r| {
                let pk = model.p_k_with_pole(&pole, pole_orbit, grading.k(&sys, r))?;
                Ok(a[r].map(|e| e.mul(&pk)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExplicitGenerators { m, pole_orbit, modaut, sym, sym_inv, sys, root_vectors, cartan, a, abar, h })
    }

    /// `Sym^m(M)·x·Sym^m(M)^{-1}` for any constant matrix.
    pub fn modaut_of(&self, x: &Mat<CycNum>) -> RfMatrix {
        self.sym.mul(&lift_matrix(x, &self.modaut.pole)).mul(&self.sym_inv)
    }

    /// The same conjugation through the triple product
    /// `exp(X/Y·E) exp(−Y ∂_X P/(dP)·F) Y^{−H}`, evaluated in `ℂ[X, Y, (PY)^{-1}]`.
    pub fn modaut_by_triple_product(&self, x: &Mat<CycNum>) -> Result<RfMatrix> {
        let p = self.modaut.pole.as_ref();
        let d = p.degree().unwrap_or(1) as i64;
        let y = BiForm::y();
        let wide = Arc::new(p.mul(&y));
        let n = self.m as usize + 1;
        let lift = |g: &Mat<CycNum>| g.map(|c| const_loc(c, &wide));
        let id = Mat::identity_like(n, &LocElem::one(&wide));
        let expo = |t: &LocElem, z: &Mat<CycNum>| {
            // nilpotent exponential
            let zt = lift(z).scale(t);
            let mut acc = id.clone();
            let mut term = id.clone();
            for k in 1..=n {
                term = term.mul(&zt).scale_scalar(&CycNum::from_rat(1, &rat(1, k as i64)));
                acc = acc.add(&term);
            }
            acc
        };
        let x_over_y = LocElem::new(BiForm::x().mul(p), &wide, 1);
        let f = LocElem::new(y.mul(&y).mul(&p.partial(Var::X)).scale_rat(&rat(-1, d)), &wide, 1);
        let ye = sym_derivative(self.m, 'e');
        let yf = sym_derivative(self.m, 'f');
        let ypow = |k: i64| -> LocElem {
            if k >= 0 {
                LocElem::from_form(y.pow(k as u32), &wide)
            } else {
                LocElem::new(p.pow((-k) as u32), &wide, (-k) as u32)
            }
        };
        // Y^{−H} on Sym^m: basis vector j has weight m − 2j
        let mut dg = Mat::filled(n, n, LocElem::zero(&wide));
        let mut dg_inv = dg.clone();
        for j in 0..n {
            let w = self.m as i64 - 2 * j as i64;
            dg.set(j, j, ypow(-w));
            dg_inv.set(j, j, ypow(w));
        }
        let minus = |t: &LocElem| t.neg();
        let s = expo(&x_over_y, &ye).mul(&expo(&f, &yf)).mul(&dg);
        let s_inv = dg_inv.mul(&expo(&minus(&f), &yf)).mul(&expo(&minus(&x_over_y), &ye));
        let img = s.mul(&lift(x)).mul(&s_inv);
        img.try_map(|e| e.narrow(&self.modaut.pole, &y))
    }
}

fn par_map<T: Sync, U: Send>(exec: Exec, items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    par::map(exec, items, f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossReport {
    pub pairs: usize,
    pub mismatches: Vec<String>,
    /// Brackets of the unscaled `a_x` agree with those of `sl(m+1)`.
    pub closes: bool,
    /// `Sym^m(M)` intertwines the group action.
    pub equivariant: bool,
    /// Each `ā_α` has degree 0 and each `a_α` degree `−k(α)`.
    pub degrees: bool,
}

impl CrossReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.closes && self.equivariant && self.degrees
    }
}

fn entries_have_degree(m: &RfMatrix, k: i64) -> bool {
    m.entries().iter().all(|e| e.is_zero() || e.degree() == Some(k))
}

/// Matrix brackets of the explicit generators against the structure table with
/// `𝕀_i = P_i^{ν_i}/P_j^{ν_j}` substituted.
pub fn cross_validate(model: &GroupModel, pole_orbit: usize, m: u32, exec: Exec) -> Result<CrossReport> {
    if !(1..=3).contains(&m) {
        return domain("cross-validation covers A_1..A_3");
    }
    let gens = ExplicitGenerators::new(model, pole_orbit, m, exec)?;
    let lie = LieType::new(Family::A, m as usize)?;
    let spec = AliaSpec {
        group: model.kind,
        pole: PoleChoice::Orbit(pole_orbit),
        lie_type: lie,
        grading: DynkinGrading::principal(m as usize),
        convention: crate::rootsystem::NConvention::Canonical,
    };
    let alg = Alia::new(spec)?;
    let table = alg.bracket_table();
    let pole = gens.modaut.pole.clone();
    let haupt: Vec<LocElem> = (0..model.num_orbits()).map(|i| model.hauptmodul(pole_orbit, i)).collect();
    let matrix_of = |e: BasisElem| -> &RfMatrix {
        match e {
            BasisElem::Cartan(i) => &gens.h[i],
            BasisElem::Root(a) => &gens.abar[a],
        }
    };
    let dim = table.dim();
    let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|x| (x..dim).map(move |y| (x, y))).collect();
    let results = par::map(exec, &pairs, |&(x, y)| -> Result<Option<String>> {
        let lhs = matrix_of(table.basis[x]).commutator(matrix_of(table.basis[y]));
        let mut rhs = Mat::filled(m as usize + 1, m as usize + 1, LocElem::zero(&pole));
        for (z, c) in table.entry(x, y) {
            let mut coeff = const_loc(&CycNum::from_rat(1, &rat(*c.scalar.numer(), *c.scalar.denom())), &pole);
            for (i, e) in c.exponents.iter().enumerate() {
                if i == pole_orbit || e.is_integer() && e.to_integer() == 0 {
                    continue;
                }
                if !e.is_integer() {
                    return domain("half-integral exponents");
                }
                coeff = coeff.mul(&haupt[i].pow(e.to_integer() as u32));
            }
            rhs = rhs.add(&matrix_of(table.basis[*z]).scale(&coeff));
        }
        Ok((lhs != rhs).then(|| format!("[{}, {}]", table.label(table.basis[x]), table.label(table.basis[y]))))
    });
    let mut mismatches = Vec::new();
    for r in results {
        if let Some(s) = r? {
            mismatches.push(s);
        }
    }
    // closure of the unscaled generators: [a_x, a_y] = a_{[x, y]}
    let basis: Vec<Mat<CycNum>> = gens.root_vectors.iter().chain(&gens.cartan).cloned().collect();
    let images: Vec<&RfMatrix> = gens.a.iter().chain(&gens.h).collect();
    let closes = (0..basis.len()).all(|i| {
        (i + 1..basis.len()).all(|j| images[i].commutator(images[j]) == gens.modaut_of(&basis[i].commutator(&basis[j])))
    });
    let grading = DynkinGrading::principal(m as usize);
    let degrees = (0..gens.sys.num_roots()).all(|r| {
        entries_have_degree(&gens.a[r], -grading.k(&gens.sys, r)) && entries_have_degree(&gens.abar[r], 0)
    }) && gens.h.iter().all(|h| entries_have_degree(h, 0));
    // a_x(g·) = Sym(g) a_x Sym(g)^{-1} follows from the same property of Sym^m(M),
    // and the P_k are invariant
    let equivariant = gens.modaut.report.equivariant.iter().all(|b| *b)
        && model.generators.iter().all(|g| match gens.sym.try_map(|e| e.substitute(g)) {
            Ok(moved) => moved == lift_matrix(&sym_power(g, m), &pole).mul(&gens.sym),
            Err(_) => false,
        });
    Ok(CrossReport { pairs: pairs.len(), mismatches, closes, equivariant, degrees })
}
