//! Algebra tasks: finite-group Cayley tables versus random Latin
//! squares, simple versus non-simple groups, and SU(3) tensor-product
//! term counts.

use alloc::vec::Vec;

use crate::dataset::{Example, FeatureShape, LabeledDataset};
use crate::error::Error;
use crate::rng::{Rng, RngSeed};
use crate::Result;

pub mod groups;
pub mod latin;
pub mod su3;

pub use groups::{build_group, catalog_up_to, FiniteGroup, GroupFamily};
pub use latin::{gen_latin_square, is_group_table, LatinSquare, Provenance};
pub use su3::{
    su3_tensor_decompose, su3_tensor_terms, su3_tensor_terms_by_weights, Su3Irrep,
    SU3_WEIGHT_BOUND,
};

/// The five non-isomorphic groups of order 12.
pub fn order_twelve_groups() -> Vec<FiniteGroup> {
    use GroupFamily as F;
    [
        F::Cyclic(12),
        F::product(F::Cyclic(6), F::Cyclic(2)),
        F::Dihedral(6),
        F::Alternating(4),
        F::Dicyclic(3),
    ]
    .iter()
    .map(|f| build_group(f).expect("order-12 family"))
    .collect()
}

/// A randomly row/column-permuted copy of a group's 1-based symbol
/// table, flattened row-major.
fn permuted_table_features(table: &[u16], order: usize, pad_to: usize, rng: &mut Rng) -> Vec<f64> {
    let rows = rng.permutation(order);
    let cols = rng.permutation(order);
    let mut features = alloc::vec![0.0; pad_to * pad_to];
    for r in 0..order {
        let src = rows[r] * order;
        let dst = r * pad_to;
        for c in 0..order {
            features[dst + c] = f64::from(table[src + cols[c]]);
        }
    }
    features
}

/// Order-12 group tables versus random non-group Latin squares, both
/// independently row/column permuted: label 1 for the five true groups,
/// 0 for Jacobson-Matthews squares certified non-group. `per_class`
/// examples each.
pub fn gen_group_vs_latin_task(per_class: usize, seed: RngSeed) -> Result<LabeledDataset> {
    if per_class == 0 {
        return Err(Error::InvalidArgument("per_class must be positive".into()));
    }
    let n = 12;
    let groups = order_twelve_groups();
    let tables: Vec<Vec<u16>> = groups.iter().map(|g| g.symbol_table()).collect();

    let mut examples = Vec::with_capacity(2 * per_class);
    let mut rng = Rng::from_seed(seed.derive("group-vs-latin"));
    for k in 0..per_class {
        let table = &tables[k % tables.len()];
        examples.push(Example {
            features: permuted_table_features(table, n, n, &mut rng),
            label: 1,
        });
    }
    let square_seed = seed.derive("latin-negatives");
    for k in 0..per_class {
        // redraw on the (rare) event the walk lands on a group isotope
        let mut attempt = 0u64;
        let square = loop {
            let sq = gen_latin_square(n, square_seed.derive_index((k as u64) << 8 | attempt))?;
            if sq.provenance == Provenance::NonGroup {
                break sq;
            }
            attempt += 1;
        };
        let symbols = square.symbol_cells();
        examples.push(Example {
            features: permuted_table_features(&symbols, n, n, &mut rng),
            label: 0,
        });
    }
    let mut shuffle_rng = Rng::from_seed(seed.derive("group-vs-latin-shuffle"));
    shuffle_rng.shuffle(&mut examples);
    LabeledDataset::new(
        examples,
        FeatureShape::Matrix { rows: n, cols: n },
        2,
        "group-vs-latin-12",
    )
}

/// Simple-versus-non-simple task over an explicit group list: each
/// example is an independently row/column permuted symbol table padded
/// bottom-right into `pad_to` x `pad_to`, labeled 1 for simple.
/// `per_class` examples per label, cycling through each class's groups
/// (so rarer simple groups are permuted more, keeping the data
/// balanced).
pub fn gen_simple_task_from_groups(
    groups: &[FiniteGroup],
    per_class: usize,
    pad_to: usize,
    seed: RngSeed,
) -> Result<LabeledDataset> {
    if per_class == 0 {
        return Err(Error::InvalidArgument("per_class must be positive".into()));
    }
    let simple: Vec<&FiniteGroup> = groups.iter().filter(|g| g.is_simple).collect();
    let non_simple: Vec<&FiniteGroup> = groups.iter().filter(|g| !g.is_simple).collect();
    if simple.is_empty() || non_simple.is_empty() {
        return Err(Error::InvalidArgument(
            "need both simple and non-simple groups in the catalog".into(),
        ));
    }
    if let Some(g) = groups.iter().find(|g| g.order() > pad_to) {
        return Err(Error::BadShape(alloc::format!(
            "group {} of order {} exceeds padding target {pad_to}",
            g.name,
            g.order()
        )));
    }

    let tables_simple: Vec<(Vec<u16>, usize)> = simple
        .iter()
        .map(|g| (g.symbol_table(), g.order()))
        .collect();
    let tables_non: Vec<(Vec<u16>, usize)> = non_simple
        .iter()
        .map(|g| (g.symbol_table(), g.order()))
        .collect();

    let mut examples = Vec::with_capacity(2 * per_class);
    let mut rng = Rng::from_seed(seed.derive("simple-groups"));
    for (label, tables) in [(1usize, &tables_simple), (0usize, &tables_non)] {
        for k in 0..per_class {
            let (table, order) = &tables[k % tables.len()];
            examples.push(Example {
                features: permuted_table_features(table, *order, pad_to, &mut rng),
                label,
            });
        }
    }
    let mut shuffle_rng = Rng::from_seed(seed.derive("simple-groups-shuffle"));
    shuffle_rng.shuffle(&mut examples);
    LabeledDataset::new(
        examples,
        FeatureShape::Matrix {
            rows: pad_to,
            cols: pad_to,
        },
        2,
        "simple-vs-nonsimple",
    )
}

/// The simple-group benchmark over the constructible catalog up to
/// `max_order` (default 70), padded to `max_order` x `max_order`.
pub fn gen_simple_group_task(
    max_order: usize,
    per_class: usize,
    seed: RngSeed,
) -> Result<LabeledDataset> {
    let catalog = catalog_up_to(max_order);
    gen_simple_task_from_groups(&catalog, per_class, max_order, seed)
}

/// Term-count classification for SU(3) tensor products: features are
/// the concatenated Dynkin labels `(a1, b1, a2, b2)` over all pairs
/// with labels up to `weight_bound`; the class is the number of terms,
/// with counts of `max_label` or more merged into the top class.
/// Balanced by down-sampling.
pub fn gen_su3_task(max_label: usize, weight_bound: u32, seed: RngSeed) -> Result<LabeledDataset> {
    if max_label < 2 {
        return Err(Error::InvalidArgument("need at least 2 label classes".into()));
    }
    if weight_bound > SU3_WEIGHT_BOUND {
        return Err(Error::InvalidArgument(alloc::format!(
            "weight bound capped at {SU3_WEIGHT_BOUND}"
        )));
    }
    let mut examples = Vec::new();
    for a1 in 0..=weight_bound {
        for b1 in 0..=weight_bound {
            for a2 in 0..=weight_bound {
                for b2 in 0..=weight_bound {
                    let r1 = Su3Irrep::new(a1, b1);
                    let r2 = Su3Irrep::new(a2, b2);
                    let decomposition = su3_tensor_decompose(r1, r2)?;
                    // summand dimensions must reproduce the product
                    let dims: u64 = decomposition.iter().map(Su3Irrep::dim).sum();
                    if dims != r1.dim() * r2.dim() {
                        return Err(Error::InvalidData(alloc::format!(
                            "dimension mismatch for [{a1},{b1}] (x) [{a2},{b2}]"
                        )));
                    }
                    let count = decomposition.len();
                    let label = count.min(max_label) - 1;
                    examples.push(Example {
                        features: alloc::vec![
                            f64::from(a1),
                            f64::from(b1),
                            f64::from(a2),
                            f64::from(b2)
                        ],
                        label,
                    });
                }
            }
        }
    }
    let ds = LabeledDataset::new(examples, FeatureShape::Flat(4), max_label, "su3-tensor-terms")?;
    crate::dataset::balance_downsample(&ds, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_groups_of_order_twelve() {
        let groups = order_twelve_groups();
        assert_eq!(groups.len(), 5);
        for g in &groups {
            assert_eq!(g.order(), 12);
            g.verify_axioms().unwrap();
            assert!(!g.is_simple);
        }
        // pairwise non-isomorphic: distinguish by the multiset of
        // element orders
        let mut signatures = Vec::new();
        for g in &groups {
            let mut orders: Vec<usize> = (0..12)
                .map(|x| {
                    let mut acc = x;
                    let mut k = 1;
                    while acc != 0 {
                        acc = g.op(acc, x);
                        k += 1;
                    }
                    k
                })
                .collect();
            orders.sort_unstable();
            signatures.push(orders);
        }
        signatures.sort();
        signatures.dedup();
        assert_eq!(signatures.len(), 5);
    }

    #[test]
    fn group_vs_latin_labels_and_shape() {
        let ds = gen_group_vs_latin_task(20, RngSeed(6)).unwrap();
        assert_eq!(ds.len(), 40);
        assert_eq!(ds.class_counts(), alloc::vec![20, 20]);
        assert_eq!(
            ds.feature_shape(),
            FeatureShape::Matrix { rows: 12, cols: 12 }
        );
        for ex in ds.examples() {
            // every row and column of a permuted Latin square is a
            // permutation of 1..=12
            for r in 0..12 {
                let mut row: Vec<i64> =
                    (0..12).map(|c| ex.features[r * 12 + c] as i64).collect();
                row.sort_unstable();
                assert_eq!(row, (1..=12).collect::<Vec<i64>>());
            }
        }
    }

    #[test]
    fn simple_task_padding_and_balance() {
        let catalog = catalog_up_to(20);
        let ds = gen_simple_task_from_groups(&catalog, 30, 20, RngSeed(9)).unwrap();
        assert_eq!(ds.class_counts(), alloc::vec![30, 30]);
        for ex in ds.examples() {
            // padded region is zero; the occupied block is a Latin square
            let n = (0..20)
                .take_while(|&r| ex.features[r * 20] != 0.0)
                .count();
            assert!(n >= 2);
            for r in 0..20 {
                for c in 0..20 {
                    let v = ex.features[r * 20 + c];
                    if r < n && c < n {
                        assert!((1.0..=n as f64).contains(&v));
                    } else {
                        assert_eq!(v, 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn padded_c5_table_is_labeled_simple() {
        let five = build_group(&GroupFamily::Cyclic(5)).unwrap();
        let q8 = build_group(&GroupFamily::Dicyclic(2)).unwrap();
        let ds =
            gen_simple_task_from_groups(&[five, q8], 4, 10, RngSeed(11)).unwrap();
        for ex in ds.examples() {
            let n = (0..10)
                .take_while(|&r| ex.features[r * 10] != 0.0)
                .count();
            match n {
                5 => assert_eq!(ex.label, 1, "C5 is simple"),
                8 => assert_eq!(ex.label, 0, "Q8 is not"),
                other => panic!("unexpected block size {other}"),
            }
        }
    }

    #[test]
    fn su3_task_examples() {
        let ds = gen_su3_task(6, 4, RngSeed(13)).unwrap();
        assert_eq!(ds.dim(), 4);
        assert_eq!(ds.label_arity(), 6);
        let counts = ds.class_counts();
        assert!(counts.iter().all(|&c| c == counts[0] && c > 0));
        for ex in ds.examples() {
            let r1 = Su3Irrep::new(ex.features[0] as u32, ex.features[1] as u32);
            let r2 = Su3Irrep::new(ex.features[2] as u32, ex.features[3] as u32);
            let count = su3_tensor_terms(r1, r2).unwrap();
            assert_eq!(ex.label, count.min(6) - 1);
        }
    }
}
