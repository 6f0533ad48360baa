use std::sync::Arc;

use rand::Rng;

use super::CoverDatum;
use crate::group::FiniteGroup;

/// Draw a datum with the given base genus and number of branch points.
///
/// Handle images and all but the last branch monodromy are uniform; the last
/// closes the surface relation. Draws that break nontriviality or
/// generation are rejected, up to `attempts` times.
pub fn sample_datum<R: Rng + ?Sized>(
    group: &Arc<FiniteGroup>,
    base_genus: usize,
    branch_points: usize,
    attempts: usize,
    rng: &mut R,
) -> Option<CoverDatum> {
    let n = group.order();
    for _ in 0..attempts {
        let handles: Vec<(usize, usize)> = (0..base_genus).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let mut acc = handles.iter().fold(0, |acc, &(a, b)| group.mul(acc, group.commutator(a, b)));
        let mut branch = Vec::with_capacity(branch_points);
        if branch_points > 0 {
            if n == 1 {
                return None;
            }
            for _ in 1..branch_points {
                let x = rng.gen_range(1..n);
                acc = group.mul(acc, x);
                branch.push(x);
            }
            let last = group.inv(acc);
            if last == 0 {
                continue;
            }
            branch.push(last);
        } else if acc != 0 {
            continue;
        }
        if let Ok(d) = CoverDatum::new(group.clone(), handles, branch) {
            return Some(d);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = Arc::new(named_group("S3").unwrap());
        let mut hits = 0;
        for n in 0..5 {
            if let Some(d) = sample_datum(&g, 1, n, 200, &mut rng) {
                assert!(d.validate().is_ok());
                assert_eq!(d.branch().len(), n);
                hits += 1;
            }
        }
        assert!(hits >= 4);
        assert!(sample_datum(&g, 0, 1, 50, &mut rng).is_none());
    }
}
