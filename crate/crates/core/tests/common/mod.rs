#![allow(dead_code)]

use alia_core::bipoly::BiForm;

pub fn f(t: &[(i64, u32, u32)]) -> BiForm {
    BiForm::from_int_terms(t)
}

pub fn c(v: i64) -> BiForm {
    f(&[(v, 0, 0)])
}

pub fn x() -> BiForm {
    BiForm::x()
}

pub fn y() -> BiForm {
    BiForm::y()
}

pub fn prod(fs: &[&BiForm]) -> BiForm {
    fs.iter().fold(c(1), |acc, g| acc.mul(g))
}

pub struct Icosa {
    pub a: BiForm,
    pub b: BiForm,
    pub d: BiForm,
    pub s: BiForm,
}

pub fn icosa() -> Icosa {
    let q1 = f(&[(1, 4, 0), (3, 3, 1), (4, 2, 2), (2, 1, 3), (1, 0, 4)]);
    let q2 = f(&[(1, 4, 0), (-2, 3, 1), (4, 2, 2), (-3, 1, 3), (1, 0, 4)]);
    let q3 = f(&[(1, 2, 0), (-1, 1, 1), (-1, 0, 2)]);
    let s = f(&[(1, 8, 0), (-1, 6, 2), (1, 4, 4), (-1, 2, 6), (1, 0, 8)]).mul(&f(&[(1, 2, 0), (1, 0, 2)])).scale_rat(&alia_core::exactnum::rat(-5, 1));
    Icosa {
        a: f(&[(1, 10, 0), (-66, 5, 5), (-11, 0, 10)]),
        b: f(&[(11, 10, 0), (-66, 5, 5), (-1, 0, 10)]),
        d: prod(&[&q1, &q2, &q3]),
        s,
    }
}

pub type Frac = (BiForm, BiForm);

pub fn rank_one_matches(m: &alia_core::bipoly::RfMatrix, col: &[Frac], row: &[Frac]) -> bool {
    for i in 0..3 {
        for j in 0..3 {
            let n = col[i].0.mul(&row[j].0);
            let d = col[i].1.mul(&row[j].1);
            if !m.get(i, j).equals_fraction(&n, &d) {
                return false;
            }
        }
    }
    true
}

/// Column and row factors of the rank-one image of `e_12`.
pub fn e1_factors() -> (Vec<Frac>, Vec<Frac>) {
    let ic = icosa();
    let d2 = ic.d.pow(2);
    (
        vec![
            (ic.a.pow(2), prod(&[&c(144), &d2, &y().pow(2)])),
            (ic.b.mul(&ic.a).neg(), prod(&[&c(72), &d2, &x(), &y()])),
            (ic.b.pow(2), prod(&[&c(144), &d2, &x().pow(2)])),
        ],
        vec![
            (ic.b.mul(&y()), prod(&[&c(6), &ic.d, &x()])),
            (ic.s.clone(), prod(&[&c(6), &ic.d])),
            (ic.a.mul(&x()).neg(), prod(&[&c(6), &ic.d, &y()])),
        ],
    )
}

/// Column and row factors of the rank-one image of `e_23`.
pub fn e2_factors() -> (Vec<Frac>, Vec<Frac>) {
    let ic = icosa();
    let d2 = ic.d.pow(2);
    (
        vec![
            (ic.a.mul(&x()), prod(&[&c(12), &ic.d, &y()])),
            (ic.s.clone(), prod(&[&c(6), &ic.d])),
            (ic.b.mul(&y()).neg(), prod(&[&c(12), &ic.d, &x()])),
        ],
        vec![
            (ic.b.pow(2), prod(&[&c(144), &d2, &x().pow(2)])),
            (ic.b.mul(&ic.a), prod(&[&c(144), &d2, &x(), &y()])),
            (ic.a.pow(2), prod(&[&c(144), &d2, &y().pow(2)])),
        ],
    )
}

/// `(X², 2XY, Y²)` and `(Y², −XY, X²)`, the factors of the image of `e_31`.
pub fn e0_factors() -> (Vec<BiForm>, Vec<BiForm>) {
    (
        vec![f(&[(1, 2, 0)]), f(&[(2, 1, 1)]), f(&[(1, 0, 2)])],
        vec![f(&[(1, 0, 2)]), f(&[(-1, 1, 1)]), f(&[(1, 2, 0)])],
    )
}

pub fn unit3(i: usize, k: usize) -> alia_core::bipoly::Mat<alia_core::exactnum::CycNum> {
    use alia_core::exactnum::CycNum;
    let mut u = alia_core::bipoly::Mat::filled(3, 3, CycNum::zero(1));
    u.set(i, k, CycNum::one(1));
    u
}
