//! Exact computations around Gushel–Mukai varieties in positive
//! characteristic: a Borel–Weil–Bott engine on Gr(2,5), Hodge-number
//! bookkeeping, the diagonal vector-field search, the GM/Lagrangian data
//! correspondence, lattice discriminants and Chow–Künneth projectors.

pub mod exact;
pub mod weights;
pub mod bott;
pub mod ledger;
pub mod pluecker;
pub mod vfsearch;
pub mod gmlag;
pub mod lattice;
pub mod ckmotives;
pub mod suite;
