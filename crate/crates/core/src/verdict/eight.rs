use serde::Serialize;

use crate::cohomology::{eight_a1_plane_permutation, CohomologyError, GaloisCase};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EightA1Class {
    /// Induced action on the five planes, 0-based.
    pub plane_permutation: [usize; 5],
    pub fixed_plane_count: usize,
    pub case: Option<GaloisCase>,
}

/// Classifies a conjugation of the eight nodes (1-based images) by the
/// planes it fixes. A printed representative is reported as itself;
/// otherwise three fixed planes give case 1 and one fixed plane case 3.
pub fn eight_a1_classify(iota: &[usize; 8]) -> Result<EightA1Class, CohomologyError> {
    let valid = iota.iter().all(|&i| (1..=8).contains(&i)) && (0..8).all(|k| iota[iota[k] - 1] == k + 1);
    if !valid {
        return Err(CohomologyError::NotInvolution);
    }
    let plane_permutation = eight_a1_plane_permutation(iota)?;
    let fixed_plane_count = plane_permutation.iter().enumerate().filter(|&(k, &j)| k == j).count();
    let printed = [GaloisCase::EightA1Case1, GaloisCase::EightA1Case2, GaloisCase::EightA1Case3]
        .into_iter()
        .find(|c| c.eight_a1_iota().as_ref() == Some(iota));
    let case = printed.or(match fixed_plane_count {
        3 => Some(GaloisCase::EightA1Case1),
        1 => Some(GaloisCase::EightA1Case3),
        _ => None,
    });
    Ok(EightA1Class { plane_permutation, fixed_plane_count, case })
}
