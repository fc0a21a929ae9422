use std::time::Instant;
use mlmath_core::algebra::{catalog_up_to, gen_group_vs_latin_task, gen_simple_task_from_groups};
use mlmath_core::dataset::split_train_val;
use mlmath_core::learners::*;
use mlmath_core::metrics::accuracy_pair;
use mlmath_core::rng::RngSeed;

fn main() {
    // criterion 3: order-12 group vs latin, gaussian svm, 5000/class
    let t0 = Instant::now();
    let ds = gen_group_vs_latin_task(5000, RngSeed(42)).unwrap();
    println!("group-vs-latin gen {:.1?}", t0.elapsed());
    let split = split_train_val(&ds, 0.8, RngSeed(1)).unwrap();
    let t0 = Instant::now();
    let spec = LearnerSpec::new(LearnerKind::Svm(SvmConfig::gaussian(Gamma::Scale)), RngSeed(3));
    let model = fit(&spec, &split.train).unwrap();
    let preds = model.predict_batch(&split.validation).unwrap();
    let pair = accuracy_pair(&split.validation.labels(), &preds, 2).unwrap();
    println!("gvl svm scale: ({:.3}, {:.3}) fit+predict {:.1?}", pair.precision, pair.phi, t0.elapsed());

    // criterion 4: simple vs non-simple at 70, 5000/class
    let catalog = catalog_up_to(70);
    let n_simple = catalog.iter().filter(|g| g.is_simple).count();
    println!("catalog: {} groups, {} simple", catalog.len(), n_simple);
    let t0 = Instant::now();
    let ds = gen_simple_task_from_groups(&catalog, 5000, 70, RngSeed(42)).unwrap();
    println!("simple-task gen {:.1?} ({} examples x {} features)", t0.elapsed(), ds.len(), ds.dim());
    let split = split_train_val(&ds, 0.8, RngSeed(1)).unwrap();
    let t0 = Instant::now();
    let spec = LearnerSpec::new(LearnerKind::Svm(SvmConfig::gaussian(Gamma::Scale)), RngSeed(3));
    let model = fit(&spec, &split.train).unwrap();
    println!("simple svm fit {:.1?}", t0.elapsed());
    let t0 = Instant::now();
    let preds = model.predict_batch(&split.validation).unwrap();
    let pair = accuracy_pair(&split.validation.labels(), &preds, 2).unwrap();
    println!("simple svm scale: ({:.3}, {:.3}) predict {:.1?}", pair.precision, pair.phi, t0.elapsed());

    // extrapolation: train on orders <= 60, eval on 61..70
    let low: Vec<_> = catalog.iter().filter(|g| g.order() <= 60).cloned().collect();
    let high: Vec<_> = catalog.iter().filter(|g| g.order() > 60).cloned().collect();
    println!("low {} groups ({} simple), high {} ({} simple)",
        low.len(), low.iter().filter(|g| g.is_simple).count(),
        high.len(), high.iter().filter(|g| g.is_simple).count());
    let train = gen_simple_task_from_groups(&low, 4000, 70, RngSeed(5)).unwrap();
    let eval_bal = gen_simple_task_from_groups(&high, 500, 70, RngSeed(6)).unwrap();
    for (name, kind) in [
        ("svm scale", LearnerKind::Svm(SvmConfig::gaussian(Gamma::Scale))),
        ("tree", LearnerKind::DecisionTree(TreeConfig::default())),
        ("forest", LearnerKind::RandomForest(ForestConfig { trees: 50, ..ForestConfig::default() })),
        ("knn5", LearnerKind::Knn(KnnConfig::euclidean(5))),
    ] {
        let t0 = Instant::now();
        let model = fit(&LearnerSpec::new(kind, RngSeed(7)), &train).unwrap();
        let preds = model.predict_batch(&eval_bal).unwrap();
        let pair = accuracy_pair(&eval_bal.labels(), &preds, 2).unwrap();
        println!("extrapolate {name}: ({:.3}, {:.3}) {:.0?}", pair.precision, pair.phi, t0.elapsed());
    }
}
