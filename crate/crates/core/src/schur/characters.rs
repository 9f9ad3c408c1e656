//! Symmetric group characters via the Murnaghan-Nakayama rule, and the
//! multiplicity of a Schur module in the free Lie algebra.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::freelie::mobius;

use super::partitions::{divisors, Partition};

/// Exact character value of the irreducible S_n representation labelled by
/// `lambda` on the conjugacy class of cycle type `cycle_type`, computed by
/// the border-strip recursion on beta-numbers.
pub fn mn_character(lambda: &Partition, cycle_type: &Partition) -> Result<i64> {
    if lambda.size() != cycle_type.size() {
        return Err(Error::SizeMismatch(lambda.size(), cycle_type.size()));
    }
    let mut memo = HashMap::new();
    Ok(mn_rec(lambda.parts(), cycle_type.parts(), &mut memo))
}

fn mn_rec(lambda: &[u32], rho: &[u32], memo: &mut HashMap<(Vec<u32>, Vec<u32>), i64>) -> i64 {
    if rho.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), rho.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = rho[0] as i64;
    let rest = &rho[1..];
    // Beta numbers: strictly decreasing lambda_i + (k - i).
    let k = lambda.len();
    let betas: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| l as i64 + (k - 1 - i) as i64)
        .collect();
    let mut total = 0i64;
    for (i, &b) in betas.iter().enumerate() {
        let nb = b - r;
        if nb < 0 || betas.contains(&nb) {
            continue;
        }
        // Height of the removed strip = number of betas strictly between nb and b.
        let crossings = betas.iter().filter(|&&x| nb < x && x < b).count();
        let sign = if crossings % 2 == 0 { 1 } else { -1 };
        let mut new_betas = betas.clone();
        new_betas[i] = nb;
        new_betas.sort_unstable_by(|a, b| b.cmp(a));
        // Back to a partition: subtract the staircase, drop zeros.
        let mut new_lambda: Vec<u32> = new_betas
            .iter()
            .enumerate()
            .map(|(j, &x)| (x - (new_betas.len() - 1 - j) as i64) as u32)
            .collect();
        while new_lambda.last() == Some(&0) {
            new_lambda.pop();
        }
        total += sign * mn_rec(&new_lambda, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Multiplicity of the Schur module labelled by `lambda` inside the degree-n
/// component of a free Lie algebra (before truncating representations with
/// more rows than generators):
/// `(1/n) * sum over d | n of mu(d) * chi^lambda on the class (d, d, ..., d)`.
pub fn free_lie_multiplicity(lambda: &Partition) -> Result<u64> {
    let n = lambda.size();
    if n == 0 {
        return Err(Error::Input(
            "empty partition has no free-Lie multiplicity".into(),
        ));
    }
    let mut sum = 0i64;
    for d in divisors(n) {
        let mu = mobius(d) as i64;
        if mu == 0 {
            continue;
        }
        let cycle_type = Partition::new(vec![d as u32; n / d]).unwrap();
        sum += mu * mn_character(lambda, &cycle_type)?;
    }
    debug_assert!(
        sum >= 0 && sum % n as i64 == 0,
        "multiplicity formula must divide exactly"
    );
    Ok((sum / n as i64) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::partitions::partitions;

    #[test]
    fn trivial_representation_has_constant_character_one() {
        for n in 1..=7 {
            let lam = Partition::new(vec![n as u32]).unwrap();
            for rho in partitions(n, n) {
                assert_eq!(mn_character(&lam, &rho).unwrap(), 1);
            }
        }
    }

    #[test]
    fn sign_representation_character() {
        for n in 1..=7 {
            let lam = Partition::new(vec![1; n]).unwrap();
            for rho in partitions(n, n) {
                let even_parts = rho.parts().iter().filter(|&&p| p % 2 == 0).count();
                let sign = if even_parts % 2 == 0 { 1 } else { -1 };
                assert_eq!(mn_character(&lam, &rho).unwrap(), sign, "n={n} rho={rho}");
            }
        }
    }

    #[test]
    fn size_mismatch_rejected() {
        let lam: Partition = "(3,1)".parse().unwrap();
        let rho: Partition = "(3)".parse().unwrap();
        assert!(mn_character(&lam, &rho).is_err());
    }

    #[test]
    fn column_orthogonality_for_s5() {
        // Oracle: sum over lambda of chi(sigma) chi(tau) equals the
        // centralizer order when the classes agree and zero otherwise.
        fn centralizer_order(rho: &Partition) -> i64 {
            let mut mult: HashMap<u32, u32> = HashMap::new();
            for &p in rho.parts() {
                *mult.entry(p).or_insert(0) += 1;
            }
            let mut z = 1i64;
            for (&p, &m) in &mult {
                z *= (p as i64).pow(m);
                z *= (1..=m as i64).product::<i64>();
            }
            z
        }
        let classes = partitions(5, 5);
        let lambdas = partitions(5, 5);
        for a in &classes {
            for b in &classes {
                let s: i64 = lambdas
                    .iter()
                    .map(|l| mn_character(l, a).unwrap() * mn_character(l, b).unwrap())
                    .sum();
                if a == b {
                    assert_eq!(s, centralizer_order(a), "class {a}");
                } else {
                    assert_eq!(s, 0, "classes {a}, {b}");
                }
            }
        }
    }

    #[test]
    fn free_lie_multiplicities_low_degree() {
        let m = |s: &str| free_lie_multiplicity(&s.parse().unwrap()).unwrap();
        assert_eq!(m("(1)"), 1);
        assert_eq!(m("(2)"), 0);
        assert_eq!(m("(1,1)"), 1);
        assert_eq!(m("(2,1)"), 1);
        assert_eq!(m("(3)"), 0);
        assert_eq!(m("(3,1)"), 1);
        assert_eq!(m("(2,1,1)"), 1);
        assert_eq!(m("(2,2)"), 0);
        assert_eq!(m("(3,2,1)"), 3);
        assert_eq!(m("(5,2)"), 2);
        assert_eq!(m("(4,4)"), 1);
        assert_eq!(m("(2,2,2,2)"), 1);
    }

    #[test]
    fn multiplicity_one_partitions_of_eight() {
        // Of all partitions of 8, exactly (7,1), (2,1,1,1,1,1,1),
        // (2,2,2,2) and (4,4) have multiplicity one.
        let expected: Vec<Partition> = ["(7,1)", "(2,1,1,1,1,1,1)", "(2,2,2,2)", "(4,4)"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let found: Vec<Partition> = partitions(8, 8)
            .into_iter()
            .filter(|l| free_lie_multiplicity(l).unwrap() == 1)
            .collect();
        let mut found_sorted = found.clone();
        found_sorted.retain(|p| expected.contains(p));
        assert_eq!(found.len(), 4, "found {found:?}");
        assert_eq!(found_sorted.len(), 4);
    }
}
