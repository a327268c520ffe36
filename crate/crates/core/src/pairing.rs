//! Backtracking involution matcher shared by the unitary pairing checks at
//! a finite prime and at infinity.
//!
//! Both checks ask the same combinatorial question: decompose every element
//! of a multiset as (tag, residual) — the tag a forced integer (δ or 2η),
//! the residual a complex number — such that the decomposed multiset is
//! closed under (x, ξ) ↦ (x, −ξ̄). An element may have up to two candidate
//! tags when the bound θ is at least 1/4, so the matcher searches all
//! candidate assignments for a valid involution, optionally under a cap on
//! the sum of assigned tags.

use num::complex::Complex64;

/// One admissible decomposition of an element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    /// Integer tag: δ at infinity for the Γ_R parameters, 2η otherwise.
    pub tag: u32,
    /// Residual ξ of the decomposition under this tag.
    pub residual: Complex64,
}

/// A solved matching: per element its chosen decomposition and partner
/// (`partner == index` marks a self-paired element).
#[derive(Debug, Clone, Copy)]
pub struct Assignment {
    pub index: usize,
    pub tag: u32,
    pub residual: Complex64,
    pub partner: usize,
}

/// Index of the element that could not be matched when the search failed,
/// measured at the deepest point the backtracking reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unmatchable(pub usize);

/// Search for an involution over the candidate decompositions.
///
/// Elements i and j pair when they pick equal tags and residuals with
/// ξ_j ≈ −ξ̄_i within `tol`; i self-pairs when |Re ξ_i| ≤ tol. When
/// `tag_budget` is given, the sum of assigned tags must stay within it.
pub fn find_involution(
    candidates: &[Vec<Candidate>],
    tol: f64,
    tag_budget: Option<u32>,
) -> Result<Vec<Assignment>, Unmatchable> {
    let n = candidates.len();
    let mut chosen: Vec<Option<(Candidate, usize)>> = vec![None; n];
    let mut deepest_failure = 0usize;
    let ok = search(
        candidates,
        tol,
        tag_budget,
        0,
        &mut chosen,
        &mut deepest_failure,
    );
    if ok {
        Ok(chosen
            .into_iter()
            .enumerate()
            .map(|(index, slot)| {
                let (cand, partner) = slot.expect("complete assignment");
                Assignment {
                    index,
                    tag: cand.tag,
                    residual: cand.residual,
                    partner,
                }
            })
            .collect())
    } else {
        Err(Unmatchable(deepest_failure))
    }
}

fn residuals_pair(a: Complex64, b: Complex64, tol: f64) -> bool {
    (b + a.conj()).norm() <= tol
}

fn search(
    candidates: &[Vec<Candidate>],
    tol: f64,
    budget: Option<u32>,
    used: u32,
    chosen: &mut Vec<Option<(Candidate, usize)>>,
    deepest_failure: &mut usize,
) -> bool {
    let n = candidates.len();
    let Some(i) = (0..n).find(|&k| chosen[k].is_none()) else {
        return true;
    };
    let fits = |extra: u32| match budget {
        Some(b) => used + extra <= b,
        None => true,
    };
    for &cand in &candidates[i] {
        // Self-pair: (x, ξ) is its own image exactly when Re ξ = 0.
        if cand.residual.re.abs() <= tol && fits(cand.tag) {
            chosen[i] = Some((cand, i));
            if search(candidates, tol, budget, used + cand.tag, chosen, deepest_failure) {
                return true;
            }
            chosen[i] = None;
        }
        for j in (i + 1)..n {
            if chosen[j].is_some() {
                continue;
            }
            for &other in &candidates[j] {
                if other.tag == cand.tag
                    && residuals_pair(cand.residual, other.residual, tol)
                    && fits(cand.tag + other.tag)
                {
                    chosen[i] = Some((cand, j));
                    chosen[j] = Some((other, i));
                    if search(
                        candidates,
                        tol,
                        budget,
                        used + cand.tag + other.tag,
                        chosen,
                        deepest_failure,
                    ) {
                        return true;
                    }
                    chosen[i] = None;
                    chosen[j] = None;
                }
            }
        }
    }
    *deepest_failure = (*deepest_failure).max(i);
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cand(tag: u32, re: f64, im: f64) -> Candidate {
        Candidate {
            tag,
            residual: Complex64::new(re, im),
        }
    }

    #[test]
    fn pairs_opposite_residuals() {
        let cands = vec![vec![cand(0, -0.2, 0.0)], vec![cand(0, 0.2, 0.0)]];
        let sol = find_involution(&cands, 1e-9, None).unwrap();
        assert_eq!(sol[0].partner, 1);
        assert_eq!(sol[1].partner, 0);
    }

    #[test]
    fn self_pair_needs_zero_real_part() {
        let ok = vec![vec![cand(1, 0.0, -8.0)]];
        assert!(find_involution(&ok, 1e-9, None).is_ok());
        let bad = vec![vec![cand(1, 0.1, 0.0)]];
        assert_eq!(find_involution(&bad, 1e-9, None), Err(Unmatchable(0)));
    }

    #[test]
    fn budget_prunes() {
        let cands = vec![vec![cand(1, 0.0, 0.0)]];
        assert!(find_involution(&cands, 1e-9, Some(1)).is_ok());
        assert!(find_involution(&cands, 1e-9, Some(0)).is_err());
    }

    #[test]
    fn backtracks_across_candidate_choices() {
        // First element can take tag 1 or 2; only tag 2 admits a partner.
        let cands = vec![
            vec![cand(1, 0.3, 0.0), cand(2, -0.2, 0.0)],
            vec![cand(2, 0.2, 0.0)],
        ];
        let sol = find_involution(&cands, 1e-9, None).unwrap();
        assert_eq!(sol[0].tag, 2);
    }

    #[test]
    fn tags_must_agree() {
        let cands = vec![vec![cand(1, -0.2, 0.0)], vec![cand(2, 0.2, 0.0)]];
        assert!(find_involution(&cands, 1e-9, None).is_err());
    }
}
