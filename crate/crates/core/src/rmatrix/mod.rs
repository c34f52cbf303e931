//! Classical r-matrices: tensors in `g (x) g`, the graded classical
//! Yang-Baxter equation, the cobracket and the trigonometric contraction.

pub mod catalog;
pub mod contraction;
mod tensor;

pub use tensor::LieTensor;

use std::sync::Arc;

use crate::error::Result;
use crate::pbw::UeTensor;
use crate::repmat::GradedMatrix;
use crate::scalar::Coeff;

/// cYBE residual of a two-leg element of `U(g) (x) U(g)`, with the legs
/// embedded by inserting units: `[r12, r13 + r23] + [r13, r23]`.
pub fn cybe_residual_ue<C: Coeff>(r: &UeTensor<C>) -> Result<UeTensor<C>> {
    let r12 = r.insert_unit_leg(2);
    let r13 = r.insert_unit_leg(1);
    let r23 = r.insert_unit_leg(0);
    r12.graded_commutator(&r13.add(&r23)?)?.add(&r13.graded_commutator(&r23)?)
}

/// cYBE residual of a two-leg operator on `V (x) V`, embedded into
/// `V (x) V (x) V` with graded swaps.
pub fn cybe_residual_rep<C: Coeff>(r: &GradedMatrix<C>, base: &Arc<[u8]>) -> Result<GradedMatrix<C>> {
    let r12 = r.embed_pair(base, 0, 1)?;
    let r13 = r.embed_pair(base, 0, 2)?;
    let r23 = r.embed_pair(base, 1, 2)?;
    r12.graded_commutator(&r13.try_add(&r23)?)?.try_add(&r13.graded_commutator(&r23)?)
}
