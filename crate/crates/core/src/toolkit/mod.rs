//! Hirsch number, Pruefer rank bound and finite-index test, with reports.

mod groupfile;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

pub use groupfile::{GroupFile, SCHEMA_VERSION};

use crate::abelian::{presentation_a, presentation_cr, AbelianOptions, CrOptions, CrPresentation};
use crate::arith::{NfElem, NumberField};
use crate::congruence::{PrimePolicy, DEFAULT_BUDGET};
use crate::error::Error;
use crate::linalg::{is_unipotent, Mat};
use crate::structure::{
    certify_completely_reducible, completely_reducible_part, is_finite_rank, unipotent_radical_normal_generators, BlockSummary, CrPart, Outcome, Route,
    SfOptions, SfVerdict,
};
use crate::unipotent::{rank_of_unipotent_radical, rank_u, Saturation};

type NfMat = Mat<NfElem>;

/// Environment variable holding the default image enumeration budget.
pub const BUDGET_ENV: &str = "FINRANK_BUDGET";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub prime: PrimePolicy,
    pub budget: usize,
    /// First precision of the log-embedding ladder, in bits.
    pub precision: u32,
    /// Re-check every certificate exactly before reporting.
    pub verify: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { prime: PrimePolicy::Smallest, budget: DEFAULT_BUDGET, precision: 128, verify: false }
    }
}

impl Options {
    pub fn sf(&self) -> SfOptions {
        SfOptions { prime: self.prime, budget: self.budget }
    }

    pub fn cr(&self) -> CrOptions {
        let top = self.precision.max(512);
        let precisions = std::iter::successors(Some(self.precision.max(32)), |p| Some(p * 2)).take_while(|&p| p <= top).collect();
        CrOptions { prime: self.prime, budget: self.budget, abelian: AbelianOptions { precisions, ..AbelianOptions::default() } }
    }
}

/// Wall-clock time per stage, in milliseconds.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings(BTreeMap<String, f64>);

impl Timings {
    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.0.entry(stage.to_string()).or_default() += start.elapsed().as_secs_f64() * 1e3;
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificates {
    pub route: Route,
    /// Congruence prime of the finite rank decision, if one was needed.
    pub finite_rank_prime: Option<u64>,
    pub block_form: BlockSummary,
    pub image_order: usize,
    /// Rank of the free abelian congruence kernel of the completely
    /// reducible part, and the number of relators presenting that part.
    pub kernel_rank: usize,
    pub relators: usize,
    pub radical_normal_generators: usize,
    /// Size of the finite generating set found for a subgroup of the
    /// unipotent radical of the same Hirsch number.
    pub unipotent_witness: usize,
    pub saturation_history: Vec<usize>,
    /// Exact certificate checks re-run under `verify`.
    pub checks: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub hirsch: usize,
    pub completely_reducible_rank: usize,
    pub unipotent_radical_rank: usize,
    /// Prime at which the completely reducible part was presented.
    pub prime_used: u64,
    pub certificates: Certificates,
    pub timings: Timings,
}

fn decided(verdict: &SfVerdict) -> Result<(), Error> {
    match &verdict.outcome {
        Outcome::True => Ok(()),
        Outcome::False => Err(Error::InfiniteRank),
        Outcome::Unknown(u) => Err(Error::Unknown(u.clone())),
    }
}

struct Checker(usize);

impl Checker {
    fn check(&mut self, what: &str, ok: bool) -> Result<(), Error> {
        self.0 += 1;
        if ok {
            Ok(())
        } else {
            Err(Error::Internal(format!("certificate check failed: {what}")))
        }
    }
}

/// Whether `<gens>` has finite rank.
pub fn finite_rank(k: &NumberField, gens: &[NfMat], opts: &Options) -> Result<SfVerdict, Error> {
    let verdict = is_finite_rank(k, gens, &opts.sf())?;
    if opts.verify {
        if let Some(w) = &verdict.witness {
            Checker(0).check("finite rank witness triangularizes the group", w.verify(k, gens))?;
        }
    }
    Ok(verdict)
}

/// The completely reducible part of a group of finite rank.
pub fn cr_part(k: &NumberField, gens: &[NfMat], opts: &Options) -> Result<(SfVerdict, CrPart), Error> {
    let verdict = finite_rank(k, gens, opts)?;
    decided(&verdict)?;
    let part = completely_reducible_part(k, gens, &verdict)?;
    Ok((verdict, part))
}

#[allow(clippy::too_many_arguments)]
fn verify_all(
    k: &NumberField,
    gens: &[NfMat],
    verdict: &SfVerdict,
    part: &CrPart,
    gy: &[NfMat],
    pres: &CrPresentation,
    radical: &[NfMat],
    sat: &Saturation,
    opts: &Options,
) -> Result<usize, Error> {
    let mut c = Checker(0);
    if let Some(w) = &verdict.witness {
        c.check("finite rank witness triangularizes the group", w.verify(k, gens))?;
    }
    c.check("completely reducible form triangularizes the group", part.form.verify(k, gens))?;
    c.check("diagonal blocks are completely reducible", certify_completely_reducible(k, &verdict.kernel, &part.form))?;
    let mut assignment = part.generators.clone();
    assignment.extend(pres.kernel.iter().cloned());
    for r in &pres.relators {
        c.check(&format!("relator {r} holds"), r.evaluate(k, &assignment)?.is_identity(k))?;
    }
    for ((d, a), l) in pres.definitions.iter().zip(&pres.kernel).zip(&pres.lifts) {
        c.check(&format!("kernel definition {d}"), d.evaluate(k, &part.generators)? == *a)?;
        c.check(&format!("kernel lift {d}"), d.evaluate(k, gy)? == *l)?;
    }
    for (i, a) in pres.kernel.iter().enumerate() {
        for b in &pres.kernel[i + 1..] {
            c.check("congruence kernel is abelian", a.commutes_with(k, b))?;
        }
    }
    if !pres.kernel.is_empty() {
        let ab = presentation_a(k, &pres.kernel, &opts.cr().abelian)?;
        c.check("congruence kernel basis is free", ab.rank == pres.kernel.len() && ab.is_torsion_free())?;
        for row in &ab.lattice.basis {
            let mut prod = Mat::identity(k, pres.kernel[0].n());
            for (a, e) in pres.kernel.iter().zip(row) {
                let e = i64::try_from(e).map_err(|_| Error::Internal("lattice exponent out of range".into()))?;
                prod = prod.mul(k, &a.pow(k, e).ok_or(Error::Singular)?);
            }
            c.check("lattice relation", prod.is_identity(k))?;
        }
    }
    for u in radical {
        c.check("radical generator is trivial on the diagonal blocks", u.block_diagonal_part(k, &part.form.block_sizes).is_identity(k))?;
    }
    let n = gy.first().map_or(0, |g| g.n());
    c.check("unipotent witness is unipotent", sat.witness.iter().all(|w| is_unipotent(k, w)))?;
    c.check("unipotent witness has the reported rank", rank_u(k, n, &sat.witness)? == sat.rank)?;
    Ok(c.0)
}

/// `hi(G)`: the Hirsch number of the completely reducible part plus that
/// of the unipotent radical.
pub fn hirsch_number(k: &NumberField, gens: &[NfMat], opts: &Options) -> Result<RankReport, Error> {
    let mut timings = Timings::default();
    let verdict = timings.time("finite_rank", || is_finite_rank(k, gens, &opts.sf()))?;
    decided(&verdict)?;
    let part = timings.time("cr_part", || completely_reducible_part(k, gens, &verdict))?;
    let gy: Vec<NfMat> = gens.iter().map(|g| part.form.conjugate(k, g)).collect();
    let pres = timings.time("rank_cr", || presentation_cr(k, &part.generators, Some(&gy), &opts.cr()))?;
    let radical = timings.time("radical_generators", || unipotent_radical_normal_generators(k, gens, &part.form, &pres.relators, &pres.lifts))?;
    let sat = timings.time("unipotent_rank", || rank_of_unipotent_radical(k, &gy, &radical))?;
    let checks = if opts.verify { timings.time("verify", || verify_all(k, gens, &verdict, &part, &gy, &pres, &radical, &sat, opts))? } else { 0 };
    Ok(RankReport {
        hirsch: pres.rank() + sat.rank,
        completely_reducible_rank: pres.rank(),
        unipotent_radical_rank: sat.rank,
        prime_used: pres.prime,
        certificates: Certificates {
            route: verdict.route,
            finite_rank_prime: verdict.prime,
            block_form: part.form.summary(),
            image_order: pres.image_order,
            kernel_rank: pres.rank(),
            relators: pres.relators.len(),
            radical_normal_generators: radical.len(),
            unipotent_witness: sat.witness.len(),
            saturation_history: sat.history.clone(),
            checks,
        },
        timings,
    })
}

/// A bound for the Pruefer rank of `GL(d, q)` with `q` a prime power: the
/// smaller of `d^2/4 + 1` (for `d >= 4`) and `3d/2 + d(d-1)/2`.
pub fn rk_bound_gl(d: usize) -> usize {
    let generic = 3 * d / 2 + d * d.saturating_sub(1) / 2;
    if d >= 4 {
        generic.min(d * d / 4 + 1)
    } else {
        generic
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankBoundReport {
    pub prufer_upper_bound: usize,
    pub gl_bound: usize,
    #[serde(flatten)]
    pub hirsch: RankReport,
}

/// Upper bound for the Pruefer rank: `hi(G) + rk(GL(nm, 3))`.
pub fn rank_bound(k: &NumberField, gens: &[NfMat], opts: &Options) -> Result<RankBoundReport, Error> {
    let hirsch = hirsch_number(k, gens, opts)?;
    let n = gens.first().map_or(0, |g| g.n());
    let gl_bound = rk_bound_gl(n * k.degree());
    Ok(RankBoundReport { prufer_upper_bound: hirsch.hirsch + gl_bound, gl_bound, hirsch })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteIndexReport {
    pub finite_index: bool,
    pub hirsch_g: usize,
    pub hirsch_h: usize,
}

/// For `H <= G` (not checked), `|G : H|` is finite iff `hi(H) = hi(G)`.
pub fn is_of_finite_index(k: &NumberField, g: &[NfMat], h: &[NfMat], opts: &Options) -> Result<FiniteIndexReport, Error> {
    let hg = hirsch_number(k, g, opts)?.hirsch;
    let hh = hirsch_number(k, h, opts)?.hirsch;
    Ok(FiniteIndexReport { finite_index: hg == hh, hirsch_g: hg, hirsch_h: hh })
}
