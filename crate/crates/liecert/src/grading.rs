//! The contact grading `g = g_2 + g_1 + g_0 + g_{-1} + g_{-2}` attached to
//! the highest root.
//!
//! Levels come from the Cartan pairing with theta, not from a distinguished
//! simple-root coefficient, so the same code is correct for type A2 where no
//! single simple root carries theta. The grading element E is the coroot of
//! theta, normalized by `[E, x_theta] = 2 x_theta`.

use num_traits::{One, Zero};

use crate::exactla::{sv_get, Subspace};
use crate::liealg::{Element, LieAlgebra};
use crate::{rat, Rat, Result};

#[derive(Debug, Clone)]
pub struct ContactGrading {
    /// Level -> subspace of g, for levels -2..=2.
    pub levels: Vec<(i64, Subspace)>,
    /// Grading element: [E, v] = i v for v in level i.
    pub e: Element,
    pub theta_vector: Element,
    pub minus_theta_vector: Element,
}

impl ContactGrading {
    pub fn level(&self, i: i64) -> &Subspace {
        &self.levels.iter().find(|(l, _)| *l == i).unwrap().1
    }

    pub fn level_dims(&self) -> Vec<(i64, usize)> {
        self.levels.iter().map(|(l, s)| (*l, s.dim())).collect()
    }

    /// Basis indices of the algebra lying in level i.
    pub fn level_indices(&self, alg: &LieAlgebra, i: i64) -> Vec<usize> {
        (0..alg.dim)
            .filter(|k| {
                let w = alg.basis_weight(*k);
                let lvl = if w.iter().all(|x| *x == 0) {
                    0
                } else {
                    alg.rs.level(&w)
                };
                lvl == i
            })
            .collect()
    }
}

/// Build the contact grading of a simple Lie algebra.
pub fn contact_grading(alg: &LieAlgebra) -> Result<ContactGrading> {
    let mut levels = Vec::new();
    for lvl in -2..=2i64 {
        let mut rows = Vec::new();
        for k in 0..alg.dim {
            let w = alg.basis_weight(k);
            let l = if w.iter().all(|x| *x == 0) {
                0
            } else {
                alg.rs.level(&w)
            };
            if l == lvl {
                rows.push(vec![(k as u32, Rat::one())]);
            }
        }
        levels.push((lvl, Subspace::from_rows(alg.dim, rows)));
    }

    // E = coroot of theta = [x_theta, x_{-theta}]
    let theta_vector = alg.basis_element(alg.theta_index());
    let minus_theta_vector = alg.basis_element(alg.minus_theta_index());
    let e = alg.bracket(&theta_vector, &minus_theta_vector)?;

    // normalization check: [E, x_theta] = 2 x_theta
    let et = alg.bracket(&e, &theta_vector)?;
    if et != theta_vector.scaled(&rat(2)) {
        return Err(crate::Error::Internal(
            "grading element fails [E, x_theta] = 2 x_theta".into(),
        ));
    }

    Ok(ContactGrading {
        levels,
        e,
        theta_vector,
        minus_theta_vector,
    })
}

/// One verified clause of the grading report.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct GradingReport {
    pub clauses: Vec<Clause>,
}

impl GradingReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
}

fn clause(name: &str, pass: bool, detail: String) -> Clause {
    Clause {
        name: name.into(),
        pass,
        detail,
    }
}

/// Verify every structural invariant of the contact grading, exactly.
pub fn check_grading(alg: &LieAlgebra, cg: &ContactGrading) -> Result<GradingReport> {
    let mut clauses = Vec::new();

    // direct sum: dims add to dim g, levels pairwise independent
    let total: usize = cg.levels.iter().map(|(_, s)| s.dim()).sum();
    let mut sum = Subspace::zero(alg.dim);
    for (_, s) in &cg.levels {
        sum = sum.sum(s)?;
    }
    clauses.push(clause(
        "direct_sum",
        total == alg.dim && sum.dim() == alg.dim,
        format!("level dims {:?}", cg.level_dims()),
    ));

    clauses.push(clause(
        "top_levels_are_lines",
        cg.level(2).dim() == 1
            && cg.level(-2).dim() == 1
            && cg.level(2).contains_vec(&cg.theta_vector.coords),
        "dim g_2 = dim g_{-2} = 1, spanned by the theta vectors".into(),
    ));

    let mirror = (1..=2).all(|i| cg.level(i).dim() == cg.level(-i).dim());
    clauses.push(clause("mirror_dims", mirror, "dim g_i = dim g_{-i}".into()));

    // bracket compatibility on basis representatives of each level
    let mut compat = true;
    for (li, si) in &cg.levels {
        for (lj, sj) in &cg.levels {
            let target = li + lj;
            for bi in si.basis() {
                for bj in sj.basis() {
                    let v = alg
                        .bracket(
                            &Element::from_sparse(alg.dim, bi.clone()),
                            &Element::from_sparse(alg.dim, bj.clone()),
                        )?
                        .coords;
                    let ok = if target.abs() > 2 {
                        v.is_empty()
                    } else {
                        cg.level(target).contains_vec(&v)
                    };
                    if !ok {
                        compat = false;
                    }
                }
            }
        }
    }
    clauses.push(clause(
        "bracket_compatibility",
        compat,
        "[g_i, g_j] inside g_{i+j}".into(),
    ));

    // [E, v] = i v on every level basis vector
    let mut e_acts = true;
    for (l, s) in &cg.levels {
        for b in s.basis() {
            let got = alg
                .bracket(&cg.e, &Element::from_sparse(alg.dim, b.clone()))?
                .coords;
            let want = crate::exactla::sv_scale(b, &rat(*l));
            if got != want {
                e_acts = false;
            }
        }
    }
    clauses.push(clause("grading_element", e_acts, "[E, v] = i v".into()));

    let bee = alg.killing_form(&cg.e, &cg.e)?;
    clauses.push(clause(
        "b_e_e_nonzero",
        !bee.is_zero(),
        format!("B(E, E) = {bee}"),
    ));

    // Killing orthogonality across levels and nondegeneracy on g_i x g_{-i}
    let mut ortho = true;
    let mut nondeg = true;
    for (li, si) in &cg.levels {
        for (lj, sj) in &cg.levels {
            let mut gram_rows = Vec::new();
            for bi in si.basis() {
                let mut row: Vec<(u32, Rat)> = Vec::new();
                for (j, bj) in sj.basis().iter().enumerate() {
                    let v = alg.killing_form(
                        &Element::from_sparse(alg.dim, bi.clone()),
                        &Element::from_sparse(alg.dim, bj.clone()),
                    )?;
                    if !v.is_zero() {
                        row.push((j as u32, v));
                    }
                }
                gram_rows.push(row);
            }
            if li + lj != 0 {
                if gram_rows.iter().any(|r| !r.is_empty()) {
                    ortho = false;
                }
            } else {
                let rank = crate::exactla::rank(&crate::exactla::SparseMat::from_rows(
                    sj.dim().max(1),
                    gram_rows.into_iter().filter(|r| !r.is_empty()).collect(),
                ));
                if rank != si.dim() {
                    nondeg = false;
                }
            }
        }
    }
    clauses.push(clause(
        "killing_orthogonality",
        ortho,
        "B(g_i, g_j) = 0 when i + j != 0".into(),
    ));
    clauses.push(clause(
        "killing_nondegenerate_pairing",
        nondeg,
        "B is nondegenerate on g_i x g_{-i}".into(),
    ));

    // [g_2, g_{-2}] = C E
    let bracket_22 = alg.bracket(&cg.theta_vector, &cg.minus_theta_vector)?;
    let line = Subspace::from_rows(alg.dim, vec![cg.e.coords.clone()]);
    clauses.push(clause(
        "bottom_bracket_is_grading_line",
        line.contains_vec(&bracket_22.coords) && !bracket_22.is_zero(),
        "[g_2, g_{-2}] = C E".into(),
    ));

    // the pairing g_1 x g_1 -> g_2 is nondegenerate
    let g1 = cg.level(1);
    let ti = alg.theta_index() as u32;
    let mut pairing_rows = Vec::new();
    for bi in g1.basis() {
        let mut row: Vec<(u32, Rat)> = Vec::new();
        for (j, bj) in g1.basis().iter().enumerate() {
            let v = alg.bracket(
                &Element::from_sparse(alg.dim, bi.clone()),
                &Element::from_sparse(alg.dim, bj.clone()),
            )?;
            if let Some(c) = sv_get(&v.coords, ti) {
                row.push((j as u32, c.clone()));
            }
        }
        pairing_rows.push(row);
    }
    let pairing_rank = crate::exactla::rank(&crate::exactla::SparseMat::from_rows(
        g1.dim().max(1),
        pairing_rows.into_iter().filter(|r| !r.is_empty()).collect(),
    ));
    clauses.push(clause(
        "symplectic_pairing_on_g1",
        pairing_rank == g1.dim(),
        "[. , .]: g_1 x g_1 -> g_2 is nondegenerate".into(),
    ));

    Ok(GradingReport { clauses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_chevalley;
    use crate::rootsys::build_root_system;

    fn cg_of(s: &str) -> (LieAlgebra, ContactGrading) {
        let alg = build_chevalley(&build_root_system(s.parse().unwrap()).unwrap()).unwrap();
        let cg = contact_grading(&alg).unwrap();
        (alg, cg)
    }

    #[test]
    fn a2_level_dims() {
        let (_, cg) = cg_of("A2");
        assert_eq!(
            cg.level_dims(),
            vec![(-2, 1), (-1, 2), (0, 2), (1, 2), (2, 1)]
        );
    }

    #[test]
    fn top_level_is_theta_line_for_all_types() {
        for t in ["A2", "G2", "B3", "D4", "C3"] {
            let (_, cg) = cg_of(t);
            assert_eq!(cg.level(2).dim(), 1, "{t}");
            assert!(cg.level(2).contains_vec(&cg.theta_vector.coords));
        }
    }

    #[test]
    fn e_acts_with_eigenvalue_two_on_theta() {
        let (alg, cg) = cg_of("G2");
        let et = alg.bracket(&cg.e, &cg.theta_vector).unwrap();
        assert_eq!(et, cg.theta_vector.scaled(&crate::rat(2)));
    }

    #[test]
    fn full_report_passes_for_g2() {
        let (alg, cg) = cg_of("G2");
        let report = check_grading(&alg, &cg).unwrap();
        for c in &report.clauses {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn full_report_passes_for_all_four_types() {
        for t in ["A2", "B3", "D4"] {
            let (alg, cg) = cg_of(t);
            let report = check_grading(&alg, &cg).unwrap();
            assert!(report.all_pass(), "{t}: {:?}", report);
        }
    }

    #[test]
    fn g0_bracket_preserves_g2() {
        let (alg, cg) = cg_of("B3");
        for b in cg.level(0).basis() {
            let v = alg
                .bracket(
                    &Element::from_sparse(alg.dim, b.clone()),
                    &cg.theta_vector,
                )
                .unwrap();
            assert!(cg.level(2).contains_vec(&v.coords));
        }
    }

    #[test]
    fn level_dim_sums() {
        for t in ["A2", "G2", "B3", "D4"] {
            let (alg, cg) = cg_of(t);
            let total: usize = cg.levels.iter().map(|(_, s)| s.dim()).sum();
            assert_eq!(total, alg.dim, "{t}");
        }
    }
}
