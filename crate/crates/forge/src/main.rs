use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use anagram_core::anaconstruct::{
    assemble_path, assign_roles, check_preconditions, compute_delta, select_sets,
    verify_construction,
};
use anagram_core::pathcheck::{grid_colourable, verify_colouring, AfcnStats};
use anagram_core::treebound::{
    certify_or_refute, thresholds, CertifyOutcome, EmpiricalOutcome, EmpiricalParams, WeightedTree,
};
use anagram_core::words::{
    find_anagramish_substring, find_near_anagramish, imbalance, is_ell_periodic, SearchOptions,
    Word,
};
use anagram_core::Rational;
use anagram_forge::cache::{resolve_cache_dir, AfcnCache, AfcnEntry};
use anagram_forge::dto::{
    BlockStringDto, CertificateDto, ConstructReportDto, GridColouringDto, PathDto, PlantMetaDto,
    ThresholdsDto, VerdictDto,
};
use anagram_forge::eps::{format_rational, parse_rational};
use anagram_forge::plant::{plant, PlantParams};
use anagram_forge::search::{empirical_parallel, longest_parallel};
use anagram_forge::wordio::{word_from_file, word_from_inline};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "anagram-forge", version, about = "Anagram-free words, 2xn grid colourings, and the decay-argument verifier")]
struct Cli {
    /// Output format; text and json report identical verdicts.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for partitionable searches. Results are independent of
    /// this value.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Checkpoint cache directory (falls back to ANAGRAM_FORGE_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// String properties: anagram-freeness, tau, periodicity, searches.
    Word {
        #[command(subcommand)]
        cmd: WordCmd,
    },
    /// Grid colouring verification and brute-force afcn.
    Grid {
        #[command(subcommand)]
        cmd: GridCmd,
    },
    /// The anagramish-path construction: plant fixtures, run, verify.
    Construct {
        #[command(subcommand)]
        cmd: ConstructCmd,
    },
    /// Weighted-tree decay verifier and thresholds.
    Tree {
        #[command(subcommand)]
        cmd: TreeCmd,
    },
}

#[derive(Args)]
struct WordInput {
    /// Inline word (one character per symbol).
    word: Option<String>,
    /// Word file: whitespace/comma-separated tokens.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl WordInput {
    fn load(&self) -> Result<Word, String> {
        match (&self.word, &self.file) {
            (Some(w), None) => word_from_inline(w),
            (None, Some(f)) => word_from_file(f),
            _ => Err("provide exactly one of an inline word or --file".to_string()),
        }
    }
}

#[derive(Subcommand)]
enum WordCmd {
    /// Is the word anagram-free? Exit 1 with a witness if not.
    Check(WordInput),
    /// Imbalance report for an even-length word.
    Tau(WordInput),
    /// Is every length-ell window complete? Exit 1 if not.
    Periodic {
        #[arg(long)]
        ell: usize,
        /// Check against the declared alphabet instead of occurring symbols.
        #[arg(long)]
        declared: bool,
        #[command(flatten)]
        input: WordInput,
    },
    /// Longest anagram-free word search over a k-letter alphabet.
    Longest {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 64)]
        max: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Restrict to canonical first-occurrence words (sound by symmetry).
        #[arg(long)]
        canonical: bool,
    },
    /// Find a near-anagramish substring (length 2r >= 2 r0, tau <= eps r).
    Near {
        #[arg(long)]
        r0: usize,
        #[arg(long)]
        eps: String,
        #[command(flatten)]
        input: WordInput,
    },
}

#[derive(Subcommand)]
enum GridCmd {
    /// Verify a colouring file; exit 1 with a witness path if not
    /// anagram-free.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// Override the n cap.
        #[arg(long)]
        force: bool,
    },
    /// Brute-force afcn(G_n); checkpointed per colour count when a cache
    /// directory is set.
    Afcn {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        cmax: u32,
        /// Override the default caps (n <= 6, cmax <= 4).
        #[arg(long)]
        force: bool,
        #[arg(long)]
        no_cache: bool,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Generate a seeded ell-periodic block string with exact target tau.
    Plant {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        tau: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        colours: u32,
        /// Uniform block width multiplier (blocks are 4k wide).
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        eps: Option<String>,
        /// Write the block string here (provenance goes to <stem>.meta.json);
        /// default prints both to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the anagramish path for a block string file.
    Run {
        file: PathBuf,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Independently re-check a path file against a block string file.
    Verify {
        block: PathBuf,
        path: PathBuf,
    },
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Build the weighted tree and report its shape.
    Build {
        #[arg(long)]
        r0: usize,
        #[command(flatten)]
        input: WordInput,
    },
    /// Balanced witness or full unbalanced certificate.
    Certify {
        #[arg(long)]
        r0: usize,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        ell: usize,
        /// Also scan all substrings for the stronger balance notion.
        #[arg(long)]
        substrings: bool,
        #[command(flatten)]
        input: WordInput,
    },
    /// t, h_min, and n from eps and ell, with sufficiency verification.
    Thresholds {
        #[arg(long)]
        eps: String,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        r0: usize,
    },
    /// Exhaustive minimal n for the near-anagramish substring lemma.
    Empirical {
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        r0: usize,
        #[arg(long)]
        cap: usize,
    },
}

fn emit<T: Serialize>(format: Format, text: &str, json: &T) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(json).expect("serializable")),
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_eps(text: &str) -> Result<Rational, String> {
    let eps = parse_rational(text)?;
    if *eps.numer() <= 0 {
        return Err("eps must be positive".to_string());
    }
    Ok(eps)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad JSON in {}: {e}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    std::fs::write(path, text + "\n").map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn meta_path(block_path: &Path) -> PathBuf {
    let stem = block_path
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "block".to_string());
    block_path.with_file_name(format!("{stem}.meta.json"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let workers = cli.workers.max(1);
    let cache_dir = resolve_cache_dir(cli.cache_dir.clone());
    match cli.cmd {
        Cmd::Word { cmd } => word_cmd(cmd, format, workers),
        Cmd::Grid { cmd } => grid_cmd(cmd, format, cache_dir),
        Cmd::Construct { cmd } => construct_cmd(cmd, format),
        Cmd::Tree { cmd } => tree_cmd(cmd, format, workers),
    }
}

#[derive(Serialize)]
struct WitnessJson {
    offset: usize,
    length: usize,
    tau: u64,
}

fn word_cmd(cmd: WordCmd, format: Format, workers: usize) -> ExitCode {
    match cmd {
        WordCmd::Check(input) => {
            let word = match input.load() {
                Ok(w) => w,
                Err(e) => return usage_error(&e),
            };
            #[derive(Serialize)]
            struct Report {
                word: String,
                anagram_free: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<WitnessJson>,
            }
            match find_anagramish_substring(&word) {
                None => {
                    emit(
                        format,
                        "anagram-free",
                        &Report {
                            word: word.to_string(),
                            anagram_free: true,
                            witness: None,
                        },
                    );
                    ExitCode::SUCCESS
                }
                Some(w) => {
                    emit(
                        format,
                        &format!(
                            "anagramish substring at offset {} length {}",
                            w.offset, w.length
                        ),
                        &Report {
                            word: word.to_string(),
                            anagram_free: false,
                            witness: Some(WitnessJson {
                                offset: w.offset,
                                length: w.length,
                                tau: 0,
                            }),
                        },
                    );
                    ExitCode::FAILURE
                }
            }
        }
        WordCmd::Tau(input) => {
            let word = match input.load() {
                Ok(w) => w,
                Err(e) => return usage_error(&e),
            };
            let report = match imbalance(&word) {
                Ok(r) => r,
                Err(e) => return usage_error(&e.to_string()),
            };
            #[derive(Serialize)]
            struct Report {
                word: String,
                tau: u64,
                per_symbol_delta: Vec<i64>,
                anagramish: bool,
            }
            emit(
                format,
                &format!("tau = {} (anagramish: {})", report.tau, report.tau == 0),
                &Report {
                    word: word.to_string(),
                    tau: report.tau,
                    per_symbol_delta: report.per_symbol_delta.clone(),
                    anagramish: report.tau == 0,
                },
            );
            ExitCode::SUCCESS
        }
        WordCmd::Periodic { ell, declared, input } => {
            let word = match input.load() {
                Ok(w) => w,
                Err(e) => return usage_error(&e),
            };
            let periodic = match is_ell_periodic(&word, ell, declared) {
                Ok(p) => p,
                Err(e) => return usage_error(&e.to_string()),
            };
            #[derive(Serialize)]
            struct Report {
                word: String,
                ell: usize,
                declared: bool,
                periodic: bool,
            }
            emit(
                format,
                &format!("{}-periodic: {periodic}", ell),
                &Report {
                    word: word.to_string(),
                    ell,
                    declared,
                    periodic,
                },
            );
            if periodic {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        WordCmd::Longest {
            k,
            max,
            budget,
            canonical,
        } => {
            let opts = SearchOptions {
                max_len: max,
                node_budget: budget,
                canonical,
            };
            let outcome = match longest_parallel(k, &opts, workers) {
                Ok(o) => o,
                Err(e) => return usage_error(&e.to_string()),
            };
            // Independent re-verification of the reported word.
            if find_anagramish_substring(&outcome.word).is_some() {
                eprintln!("internal error: reported word is not anagram-free");
                return ExitCode::FAILURE;
            }
            #[derive(Serialize)]
            struct Report {
                k: usize,
                max_len: usize,
                budget: u64,
                canonical: bool,
                best_word: String,
                best_len: usize,
                nodes_expanded: u64,
                exhausted: bool,
                reached_max: bool,
            }
            emit(
                format,
                &format!(
                    "best length {} ({}), nodes {}, exhausted {}",
                    outcome.word.len(),
                    outcome.word,
                    outcome.stats.nodes_expanded,
                    outcome.stats.exhausted
                ),
                &Report {
                    k,
                    max_len: max,
                    budget,
                    canonical,
                    best_word: outcome.word.to_string(),
                    best_len: outcome.word.len(),
                    nodes_expanded: outcome.stats.nodes_expanded,
                    exhausted: outcome.stats.exhausted,
                    reached_max: outcome.stats.reached_max,
                },
            );
            ExitCode::SUCCESS
        }
        WordCmd::Near { r0, eps, input } => {
            let word = match input.load() {
                Ok(w) => w,
                Err(e) => return usage_error(&e),
            };
            let eps = match parse_eps(&eps) {
                Ok(e) => e,
                Err(e) => return usage_error(&e),
            };
            let witness = match find_near_anagramish(&word, r0, eps) {
                Ok(w) => w,
                Err(e) => return usage_error(&e.to_string()),
            };
            #[derive(Serialize)]
            struct Report {
                word: String,
                r0: usize,
                eps: String,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<WitnessJson>,
            }
            let report = Report {
                word: word.to_string(),
                r0,
                eps: format_rational(eps),
                witness: witness.map(|w| WitnessJson {
                    offset: w.offset,
                    length: w.length,
                    tau: w.tau_value,
                }),
            };
            match &report.witness {
                Some(w) => {
                    emit(
                        format,
                        &format!(
                            "near-anagramish substring at offset {} length {} tau {}",
                            w.offset, w.length, w.tau
                        ),
                        &report,
                    );
                    ExitCode::SUCCESS
                }
                None => {
                    emit(format, "no qualifying substring", &report);
                    ExitCode::FAILURE
                }
            }
        }
    }
}

fn grid_cmd(cmd: GridCmd, format: Format, cache_dir: Option<PathBuf>) -> ExitCode {
    match cmd {
        GridCmd::Check { file, max_n, force } => {
            let dto: GridColouringDto = match read_json(&file) {
                Ok(d) => d,
                Err(e) => return usage_error(&e),
            };
            if dto.n > max_n && !force {
                return usage_error(&format!(
                    "n = {} exceeds the cap {max_n} (simple paths grow exponentially); pass --force to override",
                    dto.n
                ));
            }
            let phi = match dto.into_core() {
                Ok(p) => p,
                Err(e) => return usage_error(&e),
            };
            let verdict = verify_colouring(&phi);
            let dto = VerdictDto::from_core(&verdict);
            let text = if dto.anagram_free {
                "anagram-free".to_string()
            } else {
                format!(
                    "not anagram-free; witness path {}",
                    dto.witness_path.as_ref().unwrap().join(" ")
                )
            };
            emit(format, &text, &dto);
            if dto.anagram_free {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        GridCmd::Afcn {
            n,
            cmax,
            force,
            no_cache,
        } => {
            if (n > 6 || cmax > 4) && !force {
                return usage_error(&format!(
                    "n = {n}, cmax = {cmax} exceed the default caps (n <= 6, cmax <= 4); pass --force to override"
                ));
            }
            if n == 0 {
                return usage_error("n must be positive");
            }
            let dir = if no_cache { None } else { cache_dir };
            let mut cache = AfcnCache::load(dir.as_deref(), n);
            let mut per_c = Vec::new();
            let mut cached = Vec::new();
            let mut afcn = None;
            for c in 1..=cmax {
                let entry = match cache.get(c) {
                    Some(e) => {
                        cached.push(c);
                        e
                    }
                    None => {
                        let mut stats = AfcnStats::default();
                        let colourable = grid_colourable(n, c, &mut stats);
                        let e = AfcnEntry {
                            c,
                            colourable,
                            nodes: stats.nodes,
                        };
                        if let Err(err) = cache.put(e) {
                            return usage_error(&format!("cache write failed: {err}"));
                        }
                        e
                    }
                };
                per_c.push(entry);
                if entry.colourable {
                    afcn = Some(c);
                    break;
                }
            }
            #[derive(Serialize)]
            struct Report {
                n: usize,
                cmax: u32,
                #[serde(skip_serializing_if = "Option::is_none")]
                afcn: Option<u32>,
                per_c: Vec<AfcnEntry>,
                cached: Vec<u32>,
            }
            let report = Report {
                n,
                cmax,
                afcn,
                per_c,
                cached,
            };
            let text = match afcn {
                Some(c) => format!("afcn(G_{n}) = {c}"),
                None => format!("afcn(G_{n}) > {cmax}"),
            };
            emit(format, &text, &report);
            if afcn.is_some() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn construct_cmd(cmd: ConstructCmd, format: Format) -> ExitCode {
    match cmd {
        ConstructCmd::Plant {
            ell,
            r,
            tau,
            seed,
            colours,
            k,
            eps,
            out,
        } => {
            let eps = match eps.map(|e| parse_eps(&e)).transpose() {
                Ok(e) => e,
                Err(e) => return usage_error(&e),
            };
            let planted = match plant(&PlantParams {
                ell,
                r,
                tau,
                seed,
                colours,
                k,
                eps,
            }) {
                Ok(p) => p,
                Err(e) => return usage_error(&e),
            };
            let block = BlockStringDto::from_core(&planted.block_string);
            let meta = PlantMetaDto {
                seed,
                ell,
                r,
                tau,
                m: planted.m,
                k,
                colours,
                eps: format_rational(planted.eps),
            };
            match out {
                Some(path) => {
                    if let Err(e) = write_json(&path, &block) {
                        return usage_error(&e);
                    }
                    let mpath = meta_path(&path);
                    if let Err(e) = write_json(&mpath, &meta) {
                        return usage_error(&e);
                    }
                    #[derive(Serialize)]
                    struct Written {
                        block_file: String,
                        meta_file: String,
                        meta: PlantMetaDto,
                    }
                    emit(
                        format,
                        &format!(
                            "wrote {} and {} (eps = {})",
                            path.display(),
                            mpath.display(),
                            meta.eps
                        ),
                        &Written {
                            block_file: path.display().to_string(),
                            meta_file: mpath.display().to_string(),
                            meta,
                        },
                    );
                }
                None => {
                    #[derive(Serialize)]
                    struct Combined {
                        block_string: BlockStringDto,
                        meta: PlantMetaDto,
                    }
                    emit(
                        format,
                        &format!(
                            "planted block string: 2r = {}, m = {}, eps = {}",
                            2 * r,
                            meta.m,
                            meta.eps
                        ),
                        &Combined {
                            block_string: block,
                            meta,
                        },
                    );
                }
            }
            ExitCode::SUCCESS
        }
        ConstructCmd::Run { file, eps, out } => {
            let dto: BlockStringDto = match read_json(&file) {
                Ok(d) => d,
                Err(e) => return usage_error(&e),
            };
            let s = match dto.into_core() {
                Ok(s) => s,
                Err(e) => return usage_error(&e),
            };
            let eps = match eps {
                Some(e) => match parse_eps(&e) {
                    Ok(e) => e,
                    Err(e) => return usage_error(&e),
                },
                None => {
                    let mpath = meta_path(&file);
                    match read_json::<PlantMetaDto>(&mpath) {
                        Ok(meta) => match parse_eps(&meta.eps) {
                            Ok(e) => e,
                            Err(e) => return usage_error(&e),
                        },
                        Err(_) => {
                            return usage_error(
                                "no --eps given and no readable provenance sidecar next to the block string",
                            )
                        }
                    }
                }
            };
            let profile = match compute_delta(&s) {
                Ok(p) => p,
                Err(e) => return usage_error(&e.to_string()),
            };
            if let Err(e) = check_preconditions(&s, &profile, eps) {
                return usage_error(&e.to_string());
            }
            let selection = match select_sets(&s, &profile, eps) {
                Ok(sel) => sel,
                Err(e) => return usage_error(&e.to_string()),
            };
            let roles = match assign_roles(&s, &selection) {
                Ok(r) => r,
                Err(e) => return usage_error(&e.to_string()),
            };
            let path = match assemble_path(&s, &roles) {
                Ok(p) => p,
                Err(e) => return usage_error(&e.to_string()),
            };
            let report = match verify_construction(&s, path.vertices()) {
                Ok(r) => r,
                Err(e) => return usage_error(&e.to_string()),
            };
            let dto = PathDto::new(path.vertices(), &report);
            if let Some(outp) = out {
                if let Err(e) = write_json(&outp, &dto) {
                    return usage_error(&e);
                }
            }
            emit(
                format,
                &format!(
                    "path of {} vertices, anagramish {}, midpoint ok {}",
                    dto.vertices.len(),
                    report.anagramish,
                    report.midpoint_ok
                ),
                &dto,
            );
            if report.path_valid && report.anagramish && report.midpoint_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        ConstructCmd::Verify { block, path } => {
            let sdto: BlockStringDto = match read_json(&block) {
                Ok(d) => d,
                Err(e) => return usage_error(&e),
            };
            let s = match sdto.into_core() {
                Ok(s) => s,
                Err(e) => return usage_error(&e),
            };
            let pdto: PathDto = match read_json(&path) {
                Ok(d) => d,
                Err(e) => return usage_error(&e),
            };
            let vertices = match pdto.parse_vertices() {
                Ok(v) => v,
                Err(e) => return usage_error(&e),
            };
            let report = match verify_construction(&s, &vertices) {
                Ok(r) => ConstructReportDto::from_core(&r),
                Err(e) => return usage_error(&e.to_string()),
            };
            let text = format!(
                "path_valid {}, anagramish {}, midpoint_ok {}, residuals {:?}",
                report.path_valid, report.anagramish, report.midpoint_ok, report.residuals
            );
            emit(format, &text, &report);
            if report.path_valid && report.anagramish {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn tree_cmd(cmd: TreeCmd, format: Format, workers: usize) -> ExitCode {
    match cmd {
        TreeCmd::Build { r0, input } => {
            let word = match input.load() {
                Ok(w) => w,
                Err(e) => return usage_error(&e),
            };
            let tree = match WeightedTree::build(&word, r0) {
                Ok(t) => t,
                Err(e) => return usage_error(&e.to_string()),
            };
            #[derive(Serialize)]
            struct Report {
                n: usize,
                r0: usize,
                height: u32,
                node_count: usize,
                root_hist: Vec<u64>,
            }
            emit(
                format,
                &format!(
                    "tree of height {} over {} leaves ({} nodes)",
                    tree.height(),
                    1usize << tree.height(),
                    tree.node_count()
                ),
                &Report {
                    n: word.len(),
                    r0,
                    height: tree.height(),
                    node_count: tree.node_count(),
                    root_hist: tree.hist(0).to_vec(),
                },
            );
            ExitCode::SUCCESS
        }
        TreeCmd::Certify {
            r0,
            eps,
            ell,
            substrings,
            input,
        } => {
            let word = match input.load() {
                Ok(w) => w,
                Err(e) => return usage_error(&e),
            };
            let eps = match parse_eps(&eps) {
                Ok(e) => e,
                Err(e) => return usage_error(&e),
            };
            let outcome = match certify_or_refute(&word, r0, eps, ell, substrings) {
                Ok(o) => o,
                Err(e) => return usage_error(&e.to_string()),
            };
            match outcome {
                CertifyOutcome::Balanced(w) => {
                    #[derive(Serialize)]
                    struct Report {
                        outcome: &'static str,
                        node: usize,
                        offset: usize,
                        length: usize,
                        tau: u64,
                    }
                    emit(
                        format,
                        &format!(
                            "balanced node {} (offset {}, length {}, tau {})",
                            w.node, w.offset, w.length, w.tau
                        ),
                        &Report {
                            outcome: "balanced",
                            node: w.node,
                            offset: w.offset,
                            length: w.length,
                            tau: w.tau,
                        },
                    );
                    ExitCode::SUCCESS
                }
                CertifyOutcome::Certificate(c) => {
                    #[derive(Serialize)]
                    struct Report {
                        outcome: &'static str,
                        #[serde(flatten)]
                        certificate: CertificateDto,
                    }
                    let dto = CertificateDto::from_core(&c);
                    let all_ok = dto.all_ok;
                    emit(
                        format,
                        &format!(
                            "everywhere unbalanced; a* = {}, t = {}, all inequalities hold: {}",
                            dto.a_star, dto.t, all_ok
                        ),
                        &Report {
                            outcome: "certificate",
                            certificate: dto,
                        },
                    );
                    if all_ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::FAILURE
                    }
                }
            }
        }
        TreeCmd::Thresholds { eps, ell, r0 } => {
            let eps = match parse_eps(&eps) {
                Ok(e) => e,
                Err(e) => return usage_error(&e),
            };
            let th = match thresholds(eps, ell, r0) {
                Ok(t) => t,
                Err(e) => return usage_error(&e.to_string()),
            };
            let dto = ThresholdsDto::from_core(&th);
            let n_text = dto
                .n
                .clone()
                .unwrap_or_else(|| format!("{} * 2^{}", r0, dto.h_min));
            emit(
                format,
                &format!(
                    "t = {}, h_min = {}, n = {}, sufficiency holds: {}",
                    dto.t, dto.h_min, n_text, dto.sufficiency_ok
                ),
                &dto,
            );
            ExitCode::SUCCESS
        }
        TreeCmd::Empirical {
            sigma,
            ell,
            eps,
            r0,
            cap,
        } => {
            let eps = match parse_eps(&eps) {
                Ok(e) => e,
                Err(e) => return usage_error(&e),
            };
            let params = EmpiricalParams {
                sigma,
                ell,
                eps,
                r0,
                n_cap: cap,
            };
            let outcome = match empirical_parallel(&params, workers) {
                Ok(o) => o,
                Err(e) => return usage_error(&e.to_string()),
            };
            #[derive(Serialize)]
            struct Report {
                sigma: usize,
                ell: usize,
                eps: String,
                r0: usize,
                cap: usize,
                #[serde(skip_serializing_if = "Option::is_none")]
                minimal_n: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                longest_bad: Option<String>,
                #[serde(skip_serializing_if = "Option::is_none")]
                bad_word_at_cap: Option<String>,
            }
            let mut report = Report {
                sigma,
                ell,
                eps: format_rational(eps),
                r0,
                cap,
                minimal_n: None,
                longest_bad: None,
                bad_word_at_cap: None,
            };
            match outcome {
                EmpiricalOutcome::MinimalN { n, longest_bad } => {
                    report.minimal_n = Some(n);
                    report.longest_bad = Some(longest_bad.to_string());
                    emit(
                        format,
                        &format!(
                            "minimal n = {n} (longest bad word: {})",
                            report.longest_bad.as_ref().unwrap()
                        ),
                        &report,
                    );
                    ExitCode::SUCCESS
                }
                EmpiricalOutcome::NoneWithinCap { bad_word } => {
                    report.bad_word_at_cap = Some(bad_word.to_string());
                    emit(
                        format,
                        &format!(
                            "no bound within cap {cap}; bad word {}",
                            report.bad_word_at_cap.as_ref().unwrap()
                        ),
                        &report,
                    );
                    ExitCode::FAILURE
                }
            }
        }
    }
}
