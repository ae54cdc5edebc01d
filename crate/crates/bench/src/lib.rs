//! Fixed benchmark instances.

use hopeprep_core::sampling::{random_hp, random_profile, trial_rng};
use hopeprep_core::{HopeAndPrepare, UtilityProfile};

/// A reproducible preference over `n` states with pairs of profiles to rank.
pub fn instance(n: usize, generators: usize, pairs: usize) -> (HopeAndPrepare, Vec<(UtilityProfile, UtilityProfile)>) {
    let rng = &mut trial_rng(2024, n as u64);
    let spec = random_hp(rng, n, generators);
    let pairs = (0..pairs)
        .map(|_| (random_profile(rng, n), random_profile(rng, n)))
        .collect();
    (spec, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_reproducible() {
        assert_eq!(instance(3, 4, 5), instance(3, 4, 5));
        assert_eq!(instance(3, 4, 5).1.len(), 5);
    }
}
