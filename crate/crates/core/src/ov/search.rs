use serde::Serialize;

use super::{OvError, OvInstance};

/// Default ceiling on `n` for the quartic brute-force searches.
pub const MAX_BRUTE_FORCE_N: usize = 64;

/// Returns the lexicographically first orthogonal `k`-tuple of vector ids.
///
/// With `distinct` the ids are pairwise different, otherwise repetition is
/// allowed. The first tuple in lexicographic order is always sorted, so the
/// search only walks increasing (resp. non-decreasing) id sequences.
pub fn find_orthogonal_tuple(
    instance: &OvInstance,
    k: usize,
    distinct: bool,
) -> Result<Option<Vec<usize>>, OvError> {
    if !(1..=4).contains(&k) {
        return Err(OvError::TupleSize(k));
    }
    if distinct && k > instance.len() {
        return Err(OvError::Parameter(format!(
            "cannot pick {k} distinct vectors out of {}",
            instance.len()
        )));
    }
    let words: Vec<&[u64]> = instance.vectors().iter().map(|v| v.words()).collect();
    let mut stack = Vec::with_capacity(k);
    let first = vec![u64::MAX; words[0].len()];
    Ok(descend(&words, k, distinct, 0, &first, &mut stack).then_some(stack))
}

fn descend(
    words: &[&[u64]],
    k: usize,
    distinct: bool,
    from: usize,
    acc: &[u64],
    stack: &mut Vec<usize>,
) -> bool {
    if stack.len() == k {
        return acc.iter().all(|&w| w == 0);
    }
    for id in from..words.len() {
        let next: Vec<u64> = acc.iter().zip(words[id]).map(|(a, w)| a & w).collect();
        stack.push(id);
        let start = if distinct { id + 1 } else { id };
        if descend(words, k, distinct, start, &next, stack) {
            return true;
        }
        stack.pop();
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassTag {
    /// No orthogonal 4-tuple, even with repetition.
    None,
    /// Orthogonal tuples exist, but only with fewer than four distinct vectors.
    Degenerate,
    /// Four pairwise-distinct vectors form an orthogonal quadruple.
    Distinct,
}

impl std::fmt::Display for ClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClassTag::None => "NONE",
            ClassTag::Degenerate => "DEGENERATE",
            ClassTag::Distinct => "DISTINCT",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceClass {
    pub tag: ClassTag,
    /// For `Distinct`, four pairwise-distinct ids; for `Degenerate`, the
    /// first orthogonal quadruple with repetition.
    pub witness: Option<[usize; 4]>,
}

pub fn classify(instance: &OvInstance) -> InstanceClass {
    let as_quad = |t: Vec<usize>| [t[0], t[1], t[2], t[3]];
    if instance.len() >= 4 {
        if let Some(t) = find_orthogonal_tuple(instance, 4, true).expect("k=4 <= n") {
            return InstanceClass {
                tag: ClassTag::Distinct,
                witness: Some(as_quad(t)),
            };
        }
    }
    match find_orthogonal_tuple(instance, 4, false).expect("k=4 is valid") {
        Some(t) => InstanceClass {
            tag: ClassTag::Degenerate,
            witness: Some(as_quad(t)),
        },
        None => InstanceClass {
            tag: ClassTag::None,
            witness: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(rows: &[&str]) -> OvInstance {
        OvInstance::from_strs(rows).unwrap()
    }

    #[test]
    fn find_examples() {
        assert_eq!(
            find_orthogonal_tuple(&inst(&["111", "110", "101"]), 4, false).unwrap(),
            None
        );
        assert_eq!(
            find_orthogonal_tuple(&inst(&["110", "101", "011"]), 3, true).unwrap(),
            Some(vec![0, 1, 2])
        );
        assert_eq!(
            find_orthogonal_tuple(&inst(&["0111", "1011", "1101", "1110"]), 4, true).unwrap(),
            Some(vec![0, 1, 2, 3])
        );
    }

    #[test]
    fn find_with_repetition_prefers_small_ids() {
        let s = inst(&["111", "100", "011"]);
        assert_eq!(
            find_orthogonal_tuple(&s, 4, false).unwrap(),
            Some(vec![0, 0, 1, 2])
        );
        assert_eq!(
            find_orthogonal_tuple(&s, 2, false).unwrap(),
            Some(vec![1, 2])
        );
    }

    #[test]
    fn find_rejects_bad_k() {
        let s = inst(&["1", "0"]);
        assert_eq!(
            find_orthogonal_tuple(&s, 5, false),
            Err(OvError::TupleSize(5))
        );
        assert_eq!(
            find_orthogonal_tuple(&s, 0, false),
            Err(OvError::TupleSize(0))
        );
        assert!(find_orthogonal_tuple(&s, 3, true).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&inst(&["111", "110", "101"])).tag, ClassTag::None);
        // The three sparse vectors already kill every coordinate, so adding
        // 111 yields a distinct quadruple.
        assert_eq!(
            classify(&inst(&["110", "101", "011", "111"])).witness,
            Some([0, 1, 2, 3])
        );
        let d = classify(&inst(&["110", "101", "011"]));
        assert_eq!(d.tag, ClassTag::Degenerate);
        assert_eq!(d.witness, Some([0, 0, 1, 2]));
        let c = classify(&inst(&["0111", "1011", "1101", "1110"]));
        assert_eq!(c.tag, ClassTag::Distinct);
        assert_eq!(c.witness, Some([0, 1, 2, 3]));
    }

    #[test]
    fn zero_vector_is_degenerate() {
        assert_eq!(classify(&inst(&["00", "11"])).tag, ClassTag::Degenerate);
    }
}
