//! Release criteria. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails. Criteria run one after another so wall-clock
//! measurements are not disturbed by other tests in this binary.

mod common;

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use rdf2vec::benchgen::{GeneratorSpec, GraphModel};
use rdf2vec::graph::compute_stats;
use rdf2vec::ingest::Triple;
use rdf2vec::pipeline::{extract_walks, resolve_roots, train_embeddings, EdgeData, PipelineConfig, Rdf2Vec};
use rdf2vec::w2v::{
    cbow_batch_loss, cbow_loss_and_grad, init_embeddings, sgns_batch_loss, sgns_loss_and_grad, suggest_batch_size,
    train, CbowInstance, EmbeddingModel, Matrix, ModelKind, Side, SparseGrad, TrainConfig, TrainingPair,
};
use rdf2vec::walks::{bfs_walks, random_walks, WalkCorpus};
use rdf2vec::Token;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn graph_shapes() -> Outcome {
    let started = Instant::now();
    // (n, avg degree, density) expected for a tree on n vertices, to 4 decimals
    let expected = [(100, "1.9800", "0.0100"), (1000, "1.9980", "0.0010"), (10000, "1.9998", "0.0001")];
    for (n, deg, dens) in expected {
        let spec = GeneratorSpec::new(GraphModel::Barabasi, n).with_seed(n as u64);
        let data = EdgeData::from_triples(&spec.triples().map_err(|e| e.to_string())?, false).map_err(|e| e.to_string())?;
        let s = compute_stats(&data.graph().map_err(|e| e.to_string())?, false).map_err(|e| e.to_string())?;
        ensure(s.vertices == n && s.edges == n - 1, || format!("BA {n}: V={} E={}", s.vertices, s.edges))?;
        ensure(format!("{:.4}", s.avg_degree) == deg, || format!("BA {n}: avg degree {}", s.avg_degree))?;
        ensure(format!("{:.4}", s.density) == dens, || format!("BA {n}: density {}", s.density))?;
        let exact_deg = 2.0 * (n as f64 - 1.0) / n as f64;
        ensure((s.avg_degree - exact_deg).abs() < 1e-12, || format!("BA {n}: avg degree {} != 2(n-1)/n", s.avg_degree))?;
    }
    let spec = GeneratorSpec::new(GraphModel::ErdosRenyi, 100).with_seed(2024);
    let data = EdgeData::from_triples(&spec.triples().map_err(|e| e.to_string())?, false).map_err(|e| e.to_string())?;
    let s = compute_stats(&data.graph().map_err(|e| e.to_string())?, false).map_err(|e| e.to_string())?;
    ensure((3700..=4250).contains(&s.edges), || format!("ER edges {}", s.edges))?;
    let pairs = 100.0 * 99.0;
    let sigma = (0.4_f64 * 0.6 / pairs).sqrt();
    ensure((s.density - 0.4).abs() <= 5.0 * sigma, || format!("ER density {} outside 5 sigma ({sigma})", s.density))?;
    let took = started.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("ER(100) E={} density={:.4}, {:.2}s", s.edges, s.density, took.as_secs_f64()))
}

fn lexical_walks(data: &EdgeData, corpus: &WalkCorpus) -> Vec<Vec<String>> {
    corpus
        .walks()
        .map(|w| w.iter().map(|&t| data.vocab.lexical(t).unwrap().to_string()).collect())
        .collect()
}

fn walk_validity() -> Outcome {
    let mut r = rng(70);
    let mut walks_checked = 0usize;
    for g in 0..50 {
        let n = r.random_range(2..=500);
        let m = r.random_range(1..=3 * n);
        let triples = random_triples(&mut r, n, m, 1 + g % 7, g % 2 == 0);
        let refg = RefGraph::new(&triples);
        let data = EdgeData::from_triples(&triples, false).map_err(|e| e.to_string())?;
        let graph = data.graph().map_err(|e| e.to_string())?;
        let roots = resolve_roots(&data, None).map_err(|e| e.to_string())?;
        let root_names: Vec<&str> = roots.iter().map(|&t| data.vocab.lexical(t).unwrap()).collect();
        for depth in [1usize, 4, 8] {
            for mode in ["random", "duplicate_free", "bfs"] {
                let walk_number = 3;
                let corpus = match mode {
                    "bfs" => bfs_walks(&graph, &roots, depth).map(|c| c.0),
                    _ => random_walks(&graph, &roots, depth, walk_number, g as u64, mode == "duplicate_free"),
                }
                .map_err(|e| e.to_string())?;
                let walks = lexical_walks(&data, &corpus);
                let ctx = || format!("graph {g} depth {depth} {mode}");
                if mode == "random" {
                    ensure(walks.len() == roots.len() * walk_number, || format!("{}: {} walks", ctx(), walks.len()))?;
                }
                let mut per_root: HashMap<&str, Vec<&Vec<String>>> = HashMap::new();
                for w in &walks {
                    ensure(w.len() % 2 == 1 && w.len() <= 2 * depth + 1, || format!("{}: bad length {}", ctx(), w.len()))?;
                    ensure(root_names.contains(&w[0].as_str()), || format!("{}: walk starts at non-root {}", ctx(), w[0]))?;
                    for hop in w.windows(3).step_by(2) {
                        let e = (refg.id(&hop[0]), refg.id(&hop[1]), refg.id(&hop[2]));
                        ensure(refg.edge_set.contains(&e), || format!("{}: {:?} is not an edge", ctx(), hop))?;
                    }
                    let last = refg.id(w.last().unwrap());
                    if mode != "bfs" && w.len() < 2 * depth + 1 {
                        ensure(refg.out[last].is_empty(), || format!("{}: walk stopped early at a non-sink", ctx()))?;
                    }
                    if mode == "bfs" {
                        let vs: Vec<&String> = w.iter().step_by(2).collect();
                        let distinct: HashSet<&&String> = vs.iter().collect();
                        ensure(distinct.len() == vs.len(), || format!("{}: bfs walk revisits a vertex", ctx()))?;
                    }
                    per_root.entry(w[0].as_str()).or_default().push(w);
                }
                if mode == "duplicate_free" {
                    for (root, ws) in &per_root {
                        let distinct: HashSet<&&Vec<String>> = ws.iter().collect();
                        ensure(distinct.len() == ws.len() && ws.len() <= walk_number, || {
                            format!("{}: root {root} has duplicate walks", ctx())
                        })?;
                    }
                }
                walks_checked += walks.len();
            }
        }
    }
    Ok(format!("{walks_checked} walks, 0 violations"))
}

fn bfs_oracle_match() -> Outcome {
    let mut r = rng(71);
    for g in 0..100 {
        let n = r.random_range(2..=200);
        let m = r.random_range(1..=4 * n);
        let triples = random_triples(&mut r, n, m, 1 + g % 5, g < 50);
        let refg = RefGraph::new(&triples);
        let data = EdgeData::from_triples(&triples, false).map_err(|e| e.to_string())?;
        let graph = data.graph().map_err(|e| e.to_string())?;
        let roots = resolve_roots(&data, None).map_err(|e| e.to_string())?;
        let depth = 1 + g % 6;
        let (corpus, table) = bfs_walks(&graph, &roots, depth).map_err(|e| e.to_string())?;

        let mut expect_walks = Vec::new();
        let mut expect_rows = Vec::new();
        for &root in &roots {
            let (walks, rows) = bfs_oracle(&refg, refg.id(data.vocab.lexical(root).unwrap()), depth);
            // rows of one walk share its id; walk ids are global
            let mut rows = rows.into_iter();
            for w in walks {
                let id = expect_walks.len();
                for _ in 0..(w.len() / 2) {
                    let (s, t) = rows.next().unwrap();
                    expect_rows.push((refg.names[s].clone(), refg.names[t].clone(), id));
                }
                expect_walks.push(w.iter().map(|&v| refg.names[v].clone()).collect::<Vec<_>>());
            }
        }
        let got_walks = lexical_walks(&data, &corpus);
        ensure(got_walks == expect_walks, || format!("graph {g}: walks differ"))?;
        let lex = |t: Token| data.vocab.lexical(t).unwrap().to_string();
        let got_rows: Vec<_> = table.rows.iter().map(|row| (lex(row.source), lex(row.target), row.walk_id)).collect();
        ensure(got_rows == expect_rows, || format!("graph {g}: path table differs"))?;
    }
    Ok("100 graphs identical".into())
}

fn random_model(r: &mut impl Rng, vocab: usize, dim: usize, scale: f64) -> EmbeddingModel {
    let mut fill = |_| Matrix::from_vec(vocab, dim, (0..vocab * dim).map(|_| r.random_range(-scale..scale)).collect());
    EmbeddingModel { input: fill(0), output: fill(1), trained_mask: vec![true; vocab] }
}

struct Instance {
    model: EmbeddingModel,
    pairs: Vec<TrainingPair>,
    contexts: Vec<Vec<Token>>,
    targets: Vec<Token>,
    negatives: Vec<Token>,
    k: usize,
}

impl Instance {
    fn random(r: &mut impl Rng, scale: f64) -> Self {
        let vocab = r.random_range(2..20);
        let dim = r.random_range(1..9);
        let batch = r.random_range(1..8);
        let k = r.random_range(0..6);
        let tok = |r: &mut dyn rand::RngCore| r.random_range(0..vocab as Token);
        let model = random_model(r, vocab, dim, scale);
        let pairs = (0..batch).map(|_| TrainingPair::new(tok(r), tok(r))).collect();
        let contexts = (0..batch).map(|_| (0..r.random_range(1..5)).map(|_| tok(r)).collect()).collect();
        let targets = (0..batch).map(|_| tok(r)).collect();
        let negatives = (0..batch * k).map(|_| tok(r)).collect();
        Instance { model, pairs, contexts, targets, negatives, k }
    }

    fn cbow(&self) -> Vec<CbowInstance<'_>> {
        self.contexts.iter().zip(&self.targets).map(|(c, &t)| CbowInstance { context: c, target: t }).collect()
    }

    fn sgns_scalar(&self) -> f64 {
        let m = &self.model;
        let total: f64 = self
            .pairs
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let negs: Vec<&[f64]> =
                    self.negatives[i * self.k..(i + 1) * self.k].iter().map(|&n| m.output.row(n as usize)).collect();
                ns_loss(m.input.row(p.center as usize), m.output.row(p.context as usize), &negs)
            })
            .sum();
        total / self.pairs.len() as f64
    }

    fn cbow_scalar(&self) -> f64 {
        let m = &self.model;
        let total: f64 = (0..self.targets.len())
            .map(|i| {
                let ctx: Vec<&[f64]> = self.contexts[i].iter().map(|&c| m.input.row(c as usize)).collect();
                let negs: Vec<&[f64]> =
                    self.negatives[i * self.k..(i + 1) * self.k].iter().map(|&n| m.output.row(n as usize)).collect();
                ns_loss(&mean_rows(&ctx), m.output.row(self.targets[i] as usize), &negs)
            })
            .sum();
        total / self.targets.len() as f64
    }
}

fn loss_oracles() -> Outcome {
    let mut r = rng(72);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let inst = Instance::random(&mut r, 1.0);
        let sg = sgns_batch_loss(&inst.model, &inst.pairs, &inst.negatives, inst.k);
        let cb = cbow_batch_loss(&inst.model, &inst.cbow(), &inst.negatives, inst.k).map_err(|e| e.to_string())?;
        for (name, got, want) in [("sgns", sg, inst.sgns_scalar()), ("cbow", cb, inst.cbow_scalar())] {
            let rel = (got - want).abs() / want.abs().max(1e-300);
            worst = worst.max(rel);
            ensure(rel <= 1e-6, || format!("instance {i} {name}: {got} vs {want}"))?;
        }
    }
    let zero = EmbeddingModel {
        input: Matrix::zeros(10, 4),
        output: Matrix::zeros(10, 4),
        trained_mask: vec![true; 10],
    };
    let six_ln2 = 6.0 * std::f64::consts::LN_2;
    let pairs = [TrainingPair::new(1, 2), TrainingPair::new(3, 4)];
    let negatives: Vec<Token> = (0..10).map(|i| i % 10).collect();
    let sg = sgns_batch_loss(&zero, &pairs, &negatives, 5);
    let ctx = [0, 5, 6];
    let inst = [CbowInstance { context: &ctx, target: 7 }, CbowInstance { context: &ctx[..1], target: 8 }];
    let cb = cbow_batch_loss(&zero, &inst, &negatives, 5).map_err(|e| e.to_string())?;
    ensure((sg - six_ln2).abs() <= 1e-9 && (cb - six_ln2).abs() <= 1e-9, || format!("zero state {sg} / {cb}"))?;
    Ok(format!("worst relative error {worst:.2e}; zero state 6 ln 2"))
}

fn param(model: &mut EmbeddingModel, side: Side, t: usize) -> &mut [f64] {
    match side {
        Side::Input => model.input.row_mut(t),
        Side::Output => model.output.row_mut(t),
    }
}

/// Analytic gradient against central differences over every parameter.
fn grad_check(inst: &mut Instance, cbow: bool) -> Result<f64, String> {
    let h = 1e-4;
    let mut grad = SparseGrad::new(inst.model.dim());
    let loss = |inst: &Instance| -> f64 {
        if cbow {
            cbow_batch_loss(&inst.model, &inst.cbow(), &inst.negatives, inst.k).unwrap()
        } else {
            sgns_batch_loss(&inst.model, &inst.pairs, &inst.negatives, inst.k)
        }
    };
    if cbow {
        cbow_loss_and_grad(&inst.model, &inst.cbow(), &inst.negatives, inst.k, &mut grad).map_err(|e| e.to_string())?;
    } else {
        sgns_loss_and_grad(&inst.model, &inst.pairs, &inst.negatives, inst.k, &mut grad);
    }
    let (vocab, dim) = (inst.model.vocab_size(), inst.model.dim());
    let (mut diff, mut na, mut nn) = (0.0, 0.0, 0.0);
    for side in [Side::Input, Side::Output] {
        for t in 0..vocab {
            for j in 0..dim {
                let orig = param(&mut inst.model, side, t)[j];
                param(&mut inst.model, side, t)[j] = orig + h;
                let plus = loss(inst);
                param(&mut inst.model, side, t)[j] = orig - h;
                let minus = loss(inst);
                param(&mut inst.model, side, t)[j] = orig;
                let numeric = (plus - minus) / (2.0 * h);
                let analytic = grad.side(side).get(t as Token).map_or(0.0, |row| row[j]);
                diff += (analytic - numeric).powi(2);
                na += analytic * analytic;
                nn += numeric * numeric;
            }
        }
    }
    Ok(diff.sqrt() / na.sqrt().max(nn.sqrt()).max(1e-12))
}

fn gradient_check() -> Outcome {
    let mut r = rng(73);
    let mut worst = 0.0f64;
    for (name, cbow) in [("sgns", false), ("cbow", true)] {
        let mut done = 0;
        while done < 200 {
            let mut inst = Instance::random(&mut r, 0.5);
            let rel = grad_check(&mut inst, cbow)?;
            worst = worst.max(rel);
            ensure(rel <= 1e-4, || format!("{name} instance {done}: relative error {rel:.3e}"))?;
            done += 1;
        }
    }
    Ok(format!("400 instances, worst relative error {worst:.2e}"))
}

fn sparse_isolation() -> Outcome {
    let spec = GeneratorSpec::new(GraphModel::Barabasi, 200).with_seed(5);
    let data = EdgeData::from_triples(&spec.triples().map_err(|e| e.to_string())?, false).map_err(|e| e.to_string())?;
    let graph = data.graph().map_err(|e| e.to_string())?;
    let corpus = random_walks(&graph, &data.vocab.entities(), 3, 5, 9, false).map_err(|e| e.to_string())?;
    ensure(corpus.len() == 1000, || format!("corpus has {} walks", corpus.len()))?;
    // extra vocabulary rows that never occur in any walk
    let vocab = data.vocab.len() + 25;
    let config = TrainConfig { epochs: 3, vector_size: 16, min_count: 8, ..TrainConfig::default() };
    let seed = 77;
    let (model, report) = train(&corpus, vocab, &config, seed).map_err(|e| e.to_string())?;
    let init = init_embeddings(vocab, 16, seed);

    let mut freq = vec![0u64; vocab];
    for w in corpus.walks() {
        for &t in w {
            freq[t as usize] += 1;
        }
    }
    let absent: Vec<usize> = (0..vocab).filter(|&t| freq[t] < config.min_count).collect();
    let occurring_absent = absent.iter().filter(|&&t| freq[t] > 0).count();
    ensure(occurring_absent > 0, || "no corpus token falls below min_count; the check would be vacuous".into())?;
    let untouched: Vec<usize> = (0..vocab).filter(|&t| !report.touched[t]).collect();
    for &t in absent.iter().chain(&untouched) {
        let same = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits());
        ensure(same(model.input.row(t), init.input.row(t)) && same(model.output.row(t), init.output.row(t)), || {
            format!("row {t} (freq {}) changed", freq[t])
        })?;
    }
    Ok(format!("{} absent rows ({} occur below min_count) bit-identical", absent.len(), occurring_absent))
}

fn two_cliques() -> Vec<Triple> {
    let mut triples = Vec::new();
    for c in ["a", "b"] {
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    triples.push(Triple::resource(format!("{c}{i}"), "link", format!("{c}{j}")));
                }
            }
        }
    }
    triples.push(Triple::resource("a0", "bridge", "b0"));
    triples
}

fn convergence() -> Outcome {
    let started = Instant::now();
    let data = EdgeData::from_triples(&two_cliques(), false).map_err(|e| e.to_string())?;
    let config = PipelineConfig {
        embedding_model: ModelKind::SkipGram,
        vector_size: 16,
        epochs: 10,
        learning_rate: 0.01,
        random_state: 42,
        ..Default::default()
    };
    let mut pipeline = Rdf2Vec::new(config).map_err(|e| e.to_string())?;
    let emb = pipeline.fit_transform(&data, None).map_err(|e| e.to_string())?;
    let losses = pipeline.last_fit().unwrap().report.epoch_losses.clone();
    let names: Vec<String> = ["a", "b"].iter().flat_map(|c| (0..5).map(move |i| format!("{c}{i}"))).collect();
    let (mut intra, mut inter) = (Vec::new(), Vec::new());
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            let c = cosine(emb.get(&names[i]).unwrap(), emb.get(&names[j]).unwrap());
            if names[i][..1] == names[j][..1] {
                intra.push(c)
            } else {
                inter.push(c)
            }
        }
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (mi, mx) = (mean(&intra), mean(&inter));
    let took = started.elapsed();
    ensure(mi > mx, || format!("intra {mi:.4} <= inter {mx:.4}"))?;
    ensure(losses[9] < losses[0], || format!("loss {} -> {}", losses[0], losses[9]))?;
    ensure(took < Duration::from_secs(30), || format!("took {took:?}"))?;
    Ok(format!(
        "intra {mi:.3} > inter {mx:.3}; loss {:.4} -> {:.4}; {:.2}s",
        losses[0],
        losses[9],
        took.as_secs_f64()
    ))
}

fn reproducibility() -> Outcome {
    let spec = GeneratorSpec::new(GraphModel::Barabasi, 400).with_seed(3);
    let data = EdgeData::from_triples(&spec.triples().map_err(|e| e.to_string())?, false).map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for run in 0..2 {
        let config = PipelineConfig {
            walk_number: 20,
            vector_size: 32,
            min_count: 1,
            random_state: 42,
            reproducible: true,
            workers: 3,
            generate_artifact: true,
            ..Default::default()
        };
        let mut p = Rdf2Vec::new(config).map_err(|e| e.to_string())?;
        p.fit_transform(&data, None).map_err(|e| e.to_string())?;
        let out = p.save_artifacts(dir.path().join(format!("run{run}")), None).map_err(|e| e.to_string())?;
        files.push(std::fs::read(out.embeddings.unwrap()).map_err(|e| e.to_string())?);
    }
    ensure(files[0] == files[1], || "embedding files differ".into())?;
    Ok(format!("{} bytes identical (3 workers)", files[0].len()))
}

fn scaling() -> Outcome {
    let spec = GeneratorSpec::new(GraphModel::ErdosRenyi, 1000).with_seed(8);
    let data = EdgeData::from_triples(&spec.triples().map_err(|e| e.to_string())?, false).map_err(|e| e.to_string())?;
    let graph = data.graph().map_err(|e| e.to_string())?;
    let roots = resolve_roots(&data, None).map_err(|e| e.to_string())?;
    let walk_time = |walk_number: usize| -> Result<f64, String> {
        let config = PipelineConfig { walk_number, ..Default::default() };
        extract_walks(&graph, &roots, &config).map_err(|e| e.to_string())?;
        let mut best = f64::INFINITY;
        for _ in 0..5 {
            let t = Instant::now();
            let (corpus, _) = extract_walks(&graph, &roots, &config).map_err(|e| e.to_string())?;
            best = best.min(t.elapsed().as_secs_f64());
            drop(corpus);
        }
        Ok(best)
    };
    let (w100, w1000) = (walk_time(100)?, walk_time(1000)?);
    let walk_ratio = w1000 / w100;

    let base = PipelineConfig { walk_number: 4, vector_size: 32, min_count: 1, ..Default::default() };
    let (corpus, _) = extract_walks(&graph, &roots, &base).map_err(|e| e.to_string())?;
    let train_time = |epochs: usize| -> Result<f64, String> {
        let config = PipelineConfig { epochs, ..base.clone() };
        let mut best = f64::INFINITY;
        for _ in 0..3 {
            let t = Instant::now();
            train_embeddings(&corpus, data.vocab.len(), &config).map_err(|e| e.to_string())?;
            best = best.min(t.elapsed().as_secs_f64());
        }
        Ok(best)
    };
    let (t5, t10) = (train_time(5)?, train_time(10)?);
    let train_ratio = t10 / t5;
    let summary = format!(
        "walks {w100:.3}s -> {w1000:.3}s (x{walk_ratio:.2}); train {t5:.3}s -> {t10:.3}s (x{train_ratio:.2})"
    );
    ensure((5.0..=20.0).contains(&walk_ratio), || format!("walk ratio out of [5, 20]: {summary}"))?;
    ensure((1.5..=2.5).contains(&train_ratio), || format!("train ratio out of [1.5, 2.5]: {summary}"))?;
    Ok(summary)
}

fn batch_heuristic() -> Outcome {
    let mib = 1u64 << 20;
    let cases = [(mib, 4096 * mib, 1_000_000_000u64, 1024u64), (64, u64::MAX, 1_000_000, 50_000), (1, 3, 1_000_000, 1)];
    for (per_sample, budget, pairs, want) in cases {
        let got = suggest_batch_size(per_sample, budget, pairs);
        ensure(got == want, || format!("suggest_batch_size({per_sample}, {budget}, {pairs}) = {got}, want {want}"))?;
    }
    Ok("1024, 50000, 1".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("graph_shapes", graph_shapes),
        ("walk_validity", walk_validity),
        ("bfs_oracle", bfs_oracle_match),
        ("loss_oracles", loss_oracles),
        ("gradient_check", gradient_check),
        ("sparse_isolation", sparse_isolation),
        ("convergence_smoke", convergence),
        ("reproducibility", reproducibility),
        ("scaling", scaling),
        ("batch_heuristic", batch_heuristic),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
