use num_bigint::BigUint;
use num_traits::One;

use super::Partition;

/// Hook length of the box in row `i`, column `j` (both from zero).
pub fn hook_length(shape: &Partition, i: usize, j: usize) -> usize {
    let arm = shape.get(i) - j - 1;
    let leg = (i + 1..shape.length()).take_while(|&r| shape.get(r) > j).count();
    arm + leg + 1
}

/// Number of standard Young tableaux of the given shape, by the hook-length formula.
pub fn num_syt(shape: &Partition) -> BigUint {
    let n = shape.size();
    let mut numerator = BigUint::one();
    for m in 2..=n {
        numerator *= m;
    }
    let mut hooks = BigUint::one();
    for (i, &len) in shape.parts().iter().enumerate() {
        for j in 0..len {
            hooks *= hook_length(shape, i, j);
        }
    }
    numerator / hooks
}
