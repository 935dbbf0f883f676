// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use serde::Serialize;
use tripleforge::audit::{audit_role, AuditReport};
use tripleforge::certify::verify_g_and;
use tripleforge::coins::{enumerate_branches, CoinSource, SeededCoins};
use tripleforge::mpc::baselines::{DealerSource, QkdSource};
use tripleforge::mpc::conj::{conj_bindings, conj_n};
use tripleforge::mpc::leakage::{conj_sessions, leakage_report, ot_sessions, LeakageReport};
use tripleforge::mpc::ot::ot_bindings;
use tripleforge::mpc::{
    eval_anf, ot_1of2, AdditiveShare, AnfFile, BroadcastChannel, IdealSource, LiveSource, MarginalSource, Message,
    Player, QkdVariant, TripleSource, TripleSupply,
};
use tripleforge::protocol::{enumerate_runs, f_td_ideal, Transcript};
use tripleforge::{
    build_g_and, run_pi_and, BackendKind, Error, ExactDistribution, Party, ResourceSpec, Schedule, TripleShares,
};

use crate::args::*;
use crate::output::*;

/// Largest conjunction the `enumerate` mode will walk exhaustively.
const MAX_ENUMERATED_CONJ: usize = 3;

pub fn run(cli: &Cli) -> CliResult<u8> {
    let sink = Sink::new(cli.output.clone());
    match &cli.command {
        Command::Certify(a) => certify(cli, a, &sink),
        Command::Triple(a) => triple(cli, a, &sink),
        Command::Audit(a) => audit(cli, a, &sink),
        Command::Ot(a) => ot(cli, a, &sink),
        Command::Conj(a) => conj(cli, a, &sink),
        Command::Anf(a) => anf(cli, a, &sink),
        Command::Baselines(a) => baselines(cli, a, &sink),
    }
}

fn backends(choice: BackendChoice) -> Vec<BackendKind> {
    match choice {
        BackendChoice::Tableau => vec![BackendKind::Tableau],
        BackendChoice::Dense => vec![BackendKind::Dense],
        BackendChoice::Graph => vec![BackendKind::Graph],
        BackendChoice::Both => vec![BackendKind::Tableau, BackendKind::Dense],
    }
}

fn json_only(cli: &Cli, what: &str) -> CliResult<()> {
    match cli.format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Usage(format!(
            "{what} is nested; CSV is only available for flat tables"
        ))),
    }
}

fn bit(b: bool) -> u8 {
    b as u8
}

// certify

fn parse_pair(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("expected an edge like 9,12, got {s:?}"));
    let (i, j) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

fn load_resource(path: Option<&std::path::Path>) -> CliResult<ResourceSpec> {
    match path {
        Some(p) => Ok(ResourceSpec::from_json(&read_file(p)?)?),
        None => Ok(build_g_and()),
    }
}

#[derive(Serialize)]
struct CertifyOut<'a> {
    passed: bool,
    backends_agree: bool,
    mutations: Vec<String>,
    records: &'a [tripleforge::certify::CertRecord],
}

#[derive(Serialize)]
struct CertRow<'a> {
    family: tripleforge::certify::CheckFamily,
    identity: &'a str,
    backend: BackendKind,
    pass: bool,
    branches: usize,
    failures: usize,
    witness: &'a str,
}

fn certify(cli: &Cli, a: &CertifyArgs, sink: &Sink) -> CliResult<u8> {
    let mut spec = load_resource(a.resource.as_deref())?;
    let mut mutations = Vec::new();
    for m in a.mutate.chunks(2) {
        let (i, j) = parse_pair(&m[1])?;
        let next = match m[0].as_str() {
            "drop-edge" => spec.with_edge_removed(i, j)?,
            "add-edge" => spec.with_edge_added(i, j)?,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown mutation {other:?}; use drop-edge or add-edge"
                )))
            }
        };
        if next == spec {
            return Err(Error::InvalidGraph(format!("{} {i},{j} leaves the graph unchanged", m[0])).into());
        }
        spec = next;
        mutations.push(format!("{} {i},{j}", m[0]));
    }
    if let Some(p) = &a.emit_resource {
        write_file(p, &(spec.to_json() + "\n"))?;
    }
    let report = verify_g_and(&spec, &backends(a.backend))?;
    let (passed, agree) = (report.passed(), report.backends_agree());
    match cli.format {
        Format::Json => sink.json(&CertifyOut {
            passed,
            backends_agree: agree,
            mutations,
            records: &report.records,
        })?,
        Format::Csv => {
            let rows: Vec<CertRow> = report
                .records
                .iter()
                .map(|r| CertRow {
                    family: r.family,
                    identity: &r.identity,
                    backend: r.backend,
                    pass: r.pass,
                    branches: r.branches,
                    failures: r.failures,
                    witness: r.witness.as_deref().unwrap_or(""),
                })
                .collect();
            sink.csv(&rows)?
        }
    }
    for r in report.failures() {
        eprintln!(
            "FAIL [{}] {}: {}/{} branches",
            r.backend, r.identity, r.failures, r.branches
        );
    }
    Ok(if !agree {
        eprintln!("backends disagree");
        EXIT_DISAGREE
    } else if passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

// triple

#[derive(Debug, Clone, Serialize, PartialEq, Eq, PartialOrd, Ord)]
struct TripleRow {
    p: u8,
    q: u8,
    s: u8,
    share_a: u8,
    share_b: u8,
    share_r: u8,
    share_xor: u8,
    pq: u8,
    probability: String,
}

fn triple_table(spec: &ResourceSpec, kind: BackendKind) -> CliResult<ExactDistribution<TripleShares>> {
    let runs = enumerate_runs(spec, kind, &Schedule::canonical())?;
    Ok(runs.iter().map(|b| (b.value.shares, b.weight())).collect())
}

fn triple(cli: &Cli, a: &TripleArgs, sink: &Sink) -> CliResult<u8> {
    if a.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let spec = build_g_and();
    let kinds = backends(a.backend);
    match a.mode {
        Mode::Enumerate => {
            let tables = kinds
                .iter()
                .map(|&k| triple_table(&spec, k))
                .collect::<CliResult<Vec<_>>>()?;
            let rows: Vec<TripleRow> = tables[0]
                .iter()
                .map(|(t, w)| TripleRow {
                    p: bit(t.p),
                    q: bit(t.q),
                    s: bit(t.s.unwrap_or(false)),
                    share_a: bit(t.share_a),
                    share_b: bit(t.share_b),
                    share_r: bit(t.share_r),
                    share_xor: bit(t.reconstruct()),
                    pq: bit(t.p & t.q),
                    probability: w.to_string(),
                })
                .collect();
            if let Some(bad) = rows.iter().find(|r| r.share_xor != r.pq) {
                return Err(CliError::Invariant(format!("row {bad:?} does not reconstruct pq")));
            }
            match cli.format {
                Format::Json => sink.json(&rows)?,
                Format::Csv => sink.csv(&rows)?,
            }
            if tables.iter().any(|t| !t.same(&tables[0])) {
                eprintln!("backends disagree on the output distribution");
                return Ok(EXIT_DISAGREE);
            }
        }
        Mode::Sample => {
            json_only(cli, "a transcript")?;
            let mut out: Vec<Transcript> = Vec::with_capacity(a.count);
            let mut agree = true;
            for i in 0..a.count {
                let seed = cli.seed.wrapping_add(i as u64);
                let mut first: Option<Transcript> = None;
                for &k in &kinds {
                    let run = run_pi_and(&spec, k, &Schedule::canonical(), &mut SeededCoins::new(seed))?;
                    let t = run.transcript(&format!("triple-{i}"), Some(seed));
                    match &first {
                        None => first = Some(t),
                        Some(f) => agree &= f.events == t.events && f.shares == t.shares,
                    }
                }
                out.extend(first);
            }
            sink.json(&out)?;
            if !agree {
                eprintln!("backends disagree on a sampled transcript");
                return Ok(EXIT_DISAGREE);
            }
        }
    }
    Ok(EXIT_OK)
}

// audit

fn audit(cli: &Cli, a: &AuditArgs, sink: &Sink) -> CliResult<u8> {
    json_only(cli, "an audit report")?;
    let spec = build_g_and();
    let roles: Vec<Party> = match a.role {
        RoleChoice::A => vec![Party::A],
        RoleChoice::B => vec![Party::B],
        RoleChoice::R => vec![Party::R],
        RoleChoice::All => Party::ALL.to_vec(),
    };
    let reports = roles
        .into_iter()
        .map(|r| audit_role(&spec, r))
        .collect::<Result<Vec<AuditReport>, _>>()?;
    if let [one] = reports.as_slice() {
        sink.json(one)?;
    } else {
        sink.json(&reports)?;
    }
    let mut passed = true;
    for r in &reports {
        for c in r.failures() {
            eprintln!("FAIL [{}] {}", r.role, c.name);
            passed = false;
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}

// online computation

/// Owns whatever a source borrows so the command can hand out
/// `&mut dyn TripleSource`.
struct Sources {
    spec: ResourceSpec,
}

impl Sources {
    fn new() -> Self {
        Sources { spec: build_g_and() }
    }

    fn get(&self, choice: SourceChoice, backend: BackendChoice, mode: Mode) -> CliResult<Box<dyn TripleSource + '_>> {
        let kind = single_backend(backend)?;
        Ok(match choice {
            SourceChoice::Ideal => Box::new(IdealSource),
            SourceChoice::Dealer => Box::new(DealerSource),
            SourceChoice::Qkd => Box::new(QkdSource(QkdVariant::Corrected)),
            SourceChoice::Marginal => Box::new(MarginalSource::from_pi_and(&self.spec, kind)?),
            SourceChoice::Live => {
                if mode == Mode::Enumerate {
                    return Err(CliError::Usage(
                        "the live source branches on every measurement and is sample-only; use --source marginal"
                            .into(),
                    ));
                }
                Box::new(LiveSource {
                    spec: &self.spec,
                    backend: kind,
                })
            }
        })
    }
}

fn single_backend(choice: BackendChoice) -> CliResult<BackendKind> {
    match backends(choice).as_slice() {
        [k] => Ok(*k),
        _ => Err(CliError::Usage(
            "a triple source runs on one backend; pick tableau, dense or graph".into(),
        )),
    }
}

fn shares_map(s: &AdditiveShare) -> BTreeMap<String, u8> {
    s.iter().map(|(p, b)| (p.to_string(), bit(b))).collect()
}

#[derive(Serialize)]
struct Round {
    round: usize,
    messages: Vec<MessageOut>,
}

#[derive(Serialize)]
struct MessageOut {
    sender: String,
    label: String,
    bit: u8,
}

fn log_out(ch: &BroadcastChannel) -> Vec<Round> {
    ch.log()
        .iter()
        .enumerate()
        .map(|(i, msgs)| Round {
            round: i + 1,
            messages: msgs
                .iter()
                .map(|m: &Message| MessageOut {
                    sender: m.sender.to_string(),
                    label: m.label.clone(),
                    bit: bit(m.bit),
                })
                .collect(),
        })
        .collect()
}

#[derive(Serialize)]
struct SessionOut {
    session: &'static str,
    seed: u64,
    inputs: BTreeMap<String, u8>,
    output: u8,
    expected: u8,
    triples: usize,
    rounds: usize,
    shares: BTreeMap<String, u8>,
    log: Vec<Round>,
}

impl SessionOut {
    fn finish(self, sink: &Sink) -> CliResult<u8> {
        sink.json(&self)?;
        if self.output != self.expected {
            return Err(CliError::Invariant(format!(
                "{} reconstructed {} but the inputs give {}",
                self.session, self.output, self.expected
            )));
        }
        Ok(EXIT_OK)
    }
}

fn leakage_exit(report: &LeakageReport, sink: &Sink) -> CliResult<u8> {
    sink.json(report)?;
    let ok = report.only_through_output && (report.reconstruction_included || report.all_uniform());
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn ot(cli: &Cli, a: &OtArgs, sink: &Sink) -> CliResult<u8> {
    json_only(cli, "a session log")?;
    let sources = Sources::new();
    let mut source = sources.get(a.source.source, a.source.backend, a.source.mode)?;
    if a.source.mode == Mode::Enumerate {
        let dist = ot_sessions(source.as_mut(), a.source.with_reconstruction)?;
        return leakage_exit(&leakage_report("ot", a.source.with_reconstruction, &dist), sink);
    }
    let mut coins = SeededCoins::new(cli.seed);
    let mut supply = TripleSupply::new();
    supply.provision(&ot_bindings(), source.as_mut(), &mut coins)?;
    let mut ch = BroadcastChannel::new();
    let run = ot_1of2(a.a0, a.a1, a.b, &mut supply, &mut ch)?;
    SessionOut {
        session: "ot",
        seed: cli.seed,
        inputs: [("a0", a.a0), ("a1", a.a1), ("b", a.b)]
            .into_iter()
            .map(|(k, v)| (k.into(), bit(v)))
            .collect(),
        output: bit(run.output),
        expected: bit(if a.b { a.a1 } else { a.a0 }),
        triples: supply.consumed(),
        rounds: ch.rounds(),
        shares: shares_map(&run.shares),
        log: log_out(&ch),
    }
    .finish(sink)
}

fn conj(cli: &Cli, a: &ConjArgs, sink: &Sink) -> CliResult<u8> {
    json_only(cli, "a session log")?;
    let n = a.inputs.len();
    let sources = Sources::new();
    let mut source = sources.get(a.source.source, a.source.backend, a.source.mode)?;
    if a.source.mode == Mode::Enumerate {
        if n > MAX_ENUMERATED_CONJ {
            return Err(CliError::Usage(format!(
                "enumerate mode walks every coin; at most {MAX_ENUMERATED_CONJ} inputs"
            )));
        }
        let dist = conj_sessions(n, source.as_mut(), a.source.with_reconstruction)?;
        return leakage_exit(
            &leakage_report(&format!("conj-{n}"), a.source.with_reconstruction, &dist),
            sink,
        );
    }
    let players: Vec<Player> = (1..=n).map(Player::P).collect();
    let mut coins = SeededCoins::new(cli.seed);
    let mut supply = TripleSupply::new();
    supply.provision(&conj_bindings(&players), source.as_mut(), &mut coins)?;
    let mut ch = BroadcastChannel::new();
    let run = conj_n(&a.inputs, &players, &mut supply, &mut ch)?;
    SessionOut {
        session: "conj",
        seed: cli.seed,
        inputs: a
            .inputs
            .iter()
            .enumerate()
            .map(|(i, &b)| (format!("x{}", i + 1), bit(b)))
            .collect(),
        output: bit(run.shares.reconstruct()),
        expected: bit(a.inputs.iter().all(|&b| b)),
        triples: run.triples,
        rounds: run.rounds,
        shares: shares_map(&run.shares),
        log: log_out(&ch),
    }
    .finish(sink)
}

fn anf(cli: &Cli, a: &AnfArgs, sink: &Sink) -> CliResult<u8> {
    json_only(cli, "a session log")?;
    let file = AnfFile::from_json(&read_file(&a.file)?)?;
    let (anf, inputs) = (file.anf(), file.input_bits()?);
    let expected = anf.evaluate(&inputs)?;
    let sources = Sources::new();
    let mut source = sources.get(a.source, a.backend, Mode::Sample)?;
    let mut coins = SeededCoins::new(cli.seed);
    let mut supply = TripleSupply::new();
    supply.provision(&anf.bindings()?, source.as_mut(), &mut coins)?;
    let mut ch = BroadcastChannel::new();
    let run = eval_anf(&anf, &inputs, &mut supply, &mut ch)?;
    SessionOut {
        session: "anf",
        seed: cli.seed,
        inputs: inputs.iter().map(|(k, &v)| (k.clone(), bit(v))).collect(),
        output: bit(run.value),
        expected: bit(expected),
        triples: run.triples,
        rounds: ch.rounds(),
        shares: shares_map(&run.shares),
        log: log_out(&ch),
    }
    .finish(sink)
}

// baselines

#[derive(Serialize)]
struct BaselineRow {
    source: &'static str,
    p: u8,
    q: u8,
    share_a: u8,
    share_b: u8,
    share_r: u8,
    pq: u8,
    valid: bool,
    probability: String,
}

#[derive(Serialize)]
struct BaselineSummary {
    source: &'static str,
    /// Every triple in the support reconstructs `pq`.
    valid: bool,
    /// Total variation distance to the ideal functionality.
    distance_to_ideal: String,
    table: Vec<BaselineRow>,
}

fn tabulate<F>(mut draw: F) -> CliResult<ExactDistribution<TripleShares>>
where
    F: FnMut(&mut dyn CoinSource) -> tripleforge::Result<TripleShares>,
{
    let branches = enumerate_branches(|coins| draw(coins).map(|t| t.without_aux()))?;
    Ok(branches.iter().map(|b| (b.value, b.weight())).collect())
}

fn baselines(cli: &Cli, a: &BaselinesArgs, sink: &Sink) -> CliResult<u8> {
    let kind = single_backend(a.backend)?;
    let spec = build_g_and();
    let ideal = tabulate(|c| Ok(f_td_ideal(c)))?;
    let measured: ExactDistribution<TripleShares> = triple_table(&spec, kind)?
        .iter()
        .map(|(t, w)| (t.without_aux(), *w))
        .collect();
    let tables = [
        ("ideal", ideal.clone()),
        ("dealer", tabulate(|c| DealerSource.triple(c))?),
        (
            "qkd-as-stated",
            tabulate(|c| QkdSource(QkdVariant::AsStated).triple(c))?,
        ),
        (
            "qkd-corrected",
            tabulate(|c| QkdSource(QkdVariant::Corrected).triple(c))?,
        ),
        ("measurement", measured),
    ];
    let summaries: Vec<BaselineSummary> = tables
        .into_iter()
        .map(|(source, dist)| BaselineSummary {
            source,
            valid: dist.keys().all(|t| t.is_valid()),
            distance_to_ideal: dist.tv_distance(&ideal).to_string(),
            table: dist
                .iter()
                .map(|(t, w)| BaselineRow {
                    source,
                    p: bit(t.p),
                    q: bit(t.q),
                    share_a: bit(t.share_a),
                    share_b: bit(t.share_b),
                    share_r: bit(t.share_r),
                    pq: bit(t.p & t.q),
                    valid: t.is_valid(),
                    probability: w.to_string(),
                })
                .collect(),
        })
        .collect();
    match cli.format {
        Format::Json => sink.json(&summaries)?,
        Format::Csv => sink.csv(&summaries.iter().flat_map(|s| &s.table).collect::<Vec<_>>())?,
    }
    Ok(EXIT_OK)
}
