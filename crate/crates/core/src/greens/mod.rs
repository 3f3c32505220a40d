//! Green's structure of `DP_n`, `ODP_n` and the Rees quotients `Q(n,p)`.

mod classes;
mod properties;
mod rees;
mod table;

pub use classes::{
    d_le, d_related, greens_classes_criterion, greens_classes_oracle, h_le, j_le_oracle, l_le,
    r_l_commute, r_le, GreensClasses, Relation,
};
pub use properties::{is_categorical, is_zero_e_unitary, Witness, WitnessKind};
pub use rees::{build_rees_quotient, ideal_elements, ReesQuotient};
pub use table::{build_table, SemigroupTable, TableElement};
