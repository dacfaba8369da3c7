//! Ranks and presentations of completely reducible abelian groups and of
//! completely reducible solvable-by-finite groups.

mod cr;
pub mod etale;
mod numeric;
pub mod relations;
pub(crate) mod valuation;

use num_bigint::BigInt;

use crate::arith::{NfElem, NumberField};
use crate::error::Error;
use crate::linalg::Mat;

pub use cr::{presentation_cr, rank_cr, CrOptions, CrPresentation};
pub use etale::{eigen_data, eigen_data_capped, EigenData, EtaleElem, DEGREE_CAP};
pub use relations::{express, relation_lattice, relations, AbelianOptions, RelationLattice};

/// `Z^h x Z/d_1 x Z/d_2 x ...` with `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPresentation {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    pub lattice: RelationLattice,
}

impl AbelianPresentation {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

/// Structure of the abelian group `<gens>` (commuting, semisimple).
pub fn presentation_a(k: &NumberField, gens: &[Mat<NfElem>], opts: &AbelianOptions) -> Result<AbelianPresentation, Error> {
    let ed = eigen_data_capped(k, gens, opts.degree_cap)?;
    let lattice = relation_lattice(&ed, opts)?;
    Ok(AbelianPresentation { rank: lattice.free_rank(), torsion: lattice.torsion_invariants(), lattice })
}

/// `(h, eps)`: the Hirsch number of `<gens>` and whether it has torsion.
pub fn rank_a(k: &NumberField, gens: &[Mat<NfElem>], opts: &AbelianOptions) -> Result<(usize, u8), Error> {
    let p = presentation_a(k, gens, opts)?;
    Ok((p.rank, u8::from(!p.is_torsion_free())))
}
