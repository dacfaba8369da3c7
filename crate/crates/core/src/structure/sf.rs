//! Deciding whether a matrix group is solvable-by-finite, which for
//! finitely generated linear groups in characteristic zero is the same as
//! having finite rank.

use serde::Serialize;

use super::ua::{is_ua_normal_closure, BlockForm};
use crate::arith::{NfElem, NumberField};
use crate::congruence::{enumerate_image, schreier_generators, select_prime, PrimePolicy, DEFAULT_BUDGET};
use crate::error::{Error, Unknown};
use crate::linalg::Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SfOptions {
    pub prime: PrimePolicy,
    pub budget: usize,
}

impl Default for SfOptions {
    fn default() -> Self {
        SfOptions { prime: PrimePolicy::Smallest, budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    True,
    False,
    Unknown(Unknown),
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// The whole group is unipotent-by-abelian; no reduction needed.
    Direct,
    /// Through the kernel of reduction modulo a prime.
    Congruence,
}

#[derive(Clone, Debug)]
pub struct SfVerdict {
    pub outcome: Outcome,
    /// Flag on whose quotients `kernel` acts through abelian groups.
    pub witness: Option<BlockForm<NfElem>>,
    /// Generators of a normal subgroup of finite index that is
    /// unipotent-by-abelian when the verdict is true.
    pub kernel: Vec<Mat<NfElem>>,
    pub route: Route,
    pub prime: Option<u64>,
    pub image_order: Option<usize>,
    pub obstruction: Option<String>,
}

impl SfVerdict {
    pub fn is_true(&self) -> bool {
        self.outcome == Outcome::True
    }

    /// `Ok(true/false)`, or the reason for an unknown outcome.
    pub fn decided(&self) -> Result<bool, Unknown> {
        match &self.outcome {
            Outcome::True => Ok(true),
            Outcome::False => Ok(false),
            Outcome::Unknown(u) => Err(u.clone()),
        }
    }
}

fn check_generators(k: &NumberField, gens: &[Mat<NfElem>]) -> Result<usize, Error> {
    let n = gens.first().map_or(0, |g| g.n());
    for g in gens {
        if g.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.n() });
        }
        if g.as_flat().iter().any(|e| e.coords().len() != k.degree()) {
            return Err(Error::InvalidField(format!("element with {} coordinates in a field of degree {}", g.as_flat()[0].coords().len(), k.degree())));
        }
        if g.inverse(k).is_none() {
            return Err(Error::Singular);
        }
    }
    Ok(n)
}

/// Decides whether `<gens>` is solvable-by-finite.
///
/// The group is first tested for being unipotent-by-abelian itself. Failing
/// that, the congruence kernel `G_p` (a normal subgroup of finite index,
/// generated by the Schreier generators of the finite image) is tested; `G`
/// is SF iff `G_p` is UA.
pub fn is_solvable_by_finite(k: &NumberField, gens: &[Mat<NfElem>], opts: &SfOptions) -> Result<SfVerdict, Error> {
    let n = check_generators(k, gens)?;
    if let Some(form) = is_ua_normal_closure(k, n, gens, gens)? {
        return Ok(SfVerdict {
            outcome: Outcome::True,
            witness: Some(form),
            kernel: gens.to_vec(),
            route: Route::Direct,
            prime: None,
            image_order: None,
            obstruction: None,
        });
    }
    let site = select_prime(k, gens, opts.prime)?;
    let ff = site.residue_field();
    let images: Vec<_> = gens.iter().map(|g| site.reduce(g)).collect::<Result<_, _>>()?;
    let mut verdict = SfVerdict {
        outcome: Outcome::False,
        witness: None,
        kernel: Vec::new(),
        route: Route::Congruence,
        prime: Some(site.p()),
        image_order: None,
        obstruction: None,
    };
    let img = match enumerate_image(ff, &images, opts.budget) {
        Ok(img) => img,
        Err(Error::Unknown(u)) => {
            verdict.outcome = Outcome::Unknown(u);
            return Ok(verdict);
        }
        Err(e) => return Err(e),
    };
    verdict.image_order = Some(img.order());
    let kernel: Vec<Mat<NfElem>> = schreier_generators(k, &img, gens)?.into_iter().map(|s| s.value).collect();
    match is_ua_normal_closure(k, n, &kernel, gens)? {
        Some(form) => {
            verdict.outcome = Outcome::True;
            verdict.witness = Some(form);
        }
        None => {
            verdict.obstruction = Some(format!(
                "the congruence kernel modulo {} (index {}) is not unipotent-by-abelian: its derived group is not unipotent",
                site.p(),
                img.order()
            ));
        }
    }
    verdict.kernel = kernel;
    Ok(verdict)
}

/// Same as [`is_solvable_by_finite`]: a finitely generated linear group in
/// characteristic zero has finite rank iff it is solvable-by-finite.
pub fn is_finite_rank(k: &NumberField, gens: &[Mat<NfElem>], opts: &SfOptions) -> Result<SfVerdict, Error> {
    is_solvable_by_finite(k, gens, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Field};
    use crate::linalg::Subspace;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn m(k: &NumberField, rows: &[&[i64]]) -> Mat<NfElem> {
        Mat::from_i64(k, rows)
    }

    #[test]
    fn examples() {
        let k = q();
        let opts = SfOptions::default();
        let free = [m(&k, &[&[1, 2], &[0, 1]]), m(&k, &[&[1, 0], &[2, 1]])];
        let v = is_solvable_by_finite(&k, &free, &opts).unwrap();
        assert_eq!(v.outcome, Outcome::False);
        assert_eq!(v.prime, Some(5));
        assert!(v.obstruction.is_some());

        let ut3 = [m(&k, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]), m(&k, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]])];
        let v = is_solvable_by_finite(&k, &ut3, &opts).unwrap();
        assert!(v.is_true());
        assert!(v.witness.unwrap().verify(&k, &ut3));

        let half = k.from_rational(rat(1, 2));
        let mono = [Mat::diagonal(&k, &[k.from_int(2), half]), m(&k, &[&[0, -1], &[1, 0]])];
        let v = is_finite_rank(&k, &mono, &opts).unwrap();
        assert!(v.is_true());
        assert_eq!(v.route, Route::Congruence);
        assert_eq!(v.prime, Some(5));
    }

    #[test]
    fn trivial_inputs() {
        let k = q();
        let v = is_solvable_by_finite(&k, &[], &SfOptions::default()).unwrap();
        assert!(v.is_true());
        let finite = [m(&k, &[&[0, 1], &[1, 0]]), m(&k, &[&[-1, 0], &[0, 1]])];
        assert!(is_solvable_by_finite(&k, &finite, &SfOptions::default()).unwrap().is_true());
    }

    #[test]
    fn budget_gives_unknown() {
        let k = q();
        let free = [m(&k, &[&[1, 2], &[0, 1]]), m(&k, &[&[1, 0], &[2, 1]])];
        let v = is_solvable_by_finite(&k, &free, &SfOptions { budget: 10, ..Default::default() }).unwrap();
        assert!(matches!(v.outcome, Outcome::Unknown(Unknown::Budget { budget: 10, .. })));
    }

    #[test]
    fn errors() {
        let k = q();
        let sing = [m(&k, &[&[1, 1], &[1, 1]])];
        assert_eq!(is_solvable_by_finite(&k, &sing, &SfOptions::default()).unwrap_err(), Error::Singular);
        let mixed = [m(&k, &[&[1]]), m(&k, &[&[1, 0], &[0, 1]])];
        assert!(matches!(is_solvable_by_finite(&k, &mixed, &SfOptions::default()), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn witness_flag_is_invariant() {
        let k = q();
        let gens = [m(&k, &[&[2, 1, 0], &[0, 1, 0], &[0, 0, 3]]), m(&k, &[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]])];
        let v = is_solvable_by_finite(&k, &gens, &SfOptions::default()).unwrap();
        let form = v.witness.unwrap();
        assert!(form.verify(&k, &gens));
        let first = Subspace::span(&k, 3, (0..form.block_sizes[0]).map(|j| form.basis_change.col(j)).collect());
        assert!(gens.iter().all(|g| first.is_invariant(&k, g)));
    }
}
