//! Unpruned reference implementation, kept independent of the search.

use crate::error::{Error, Result};
use crate::instance::{Instance, Value};
use crate::pair::Pair;

pub const ORACLE_MAX_ITEMS: usize = 10;
pub const ORACLE_MAX_PARTS: u32 = 6;

/// Maximin share by enumerating all `d^m` item-to-part assignments.
pub fn brute_force_mms(instance: &Instance, pair: Pair) -> Result<Value> {
    let m = instance.len();
    let d = pair.d() as usize;
    if m > ORACLE_MAX_ITEMS || pair.d() > ORACLE_MAX_PARTS {
        return Err(Error::InstanceTooLarge {
            items: m,
            parts: d,
            max_items: ORACLE_MAX_ITEMS,
            max_parts: ORACLE_MAX_PARTS as usize,
        });
    }
    let values: Vec<u64> = instance.values().collect();
    let l = pair.l() as usize;
    let mut assignment = vec![0usize; m];
    let mut sums = vec![0u64; d];
    let mut best = 0u64;
    loop {
        sums.iter_mut().for_each(|s| *s = 0);
        for (v, &part) in values.iter().zip(&assignment) {
            sums[part] += v;
        }
        sums.sort_unstable();
        best = best.max(sums[..l].iter().sum());

        // Odometer increment over base-d digits.
        let mut pos = 0;
        loop {
            if pos == m {
                return Ok(Value(best));
            }
            assignment[pos] += 1;
            if assignment[pos] < d {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        let p13 = Pair::new(1, 3).unwrap();
        let x = Instance::from_values([1, 3, 5, 6, 9]).unwrap();
        assert_eq!(brute_force_mms(&x, p13).unwrap(), Value(7));
        assert_eq!(brute_force_mms(&Instance::unit(0), p13).unwrap(), Value(0));
        let y = Instance::from_values([40, 60]).unwrap();
        assert_eq!(brute_force_mms(&y, Pair::new(1, 2).unwrap()).unwrap(), Value(40));
    }

    #[test]
    fn oracle_refuses_large_inputs() {
        assert!(brute_force_mms(&Instance::unit(11), Pair::new(1, 2).unwrap()).is_err());
        assert!(brute_force_mms(&Instance::unit(3), Pair::new(1, 7).unwrap()).is_err());
    }
}
