use std::fmt::Write as _;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use privshare_core::audit::{self, AuditReport, Conditioning, Domain};
use privshare_core::coalition::{self, CoalitionQuery, CoalitionReport};
use privshare_core::scheme::{self, Route, SchemeConfig, SecretVector, Share, ShareTable};
use privshare_core::PrimeModulus;

use crate::docs::*;
use crate::output::emit;
use crate::{
    AccessArgs, AuditArgs, Cli, CliError, Command, ConditioningArg, DealArgs, DomainArg,
    EnumerateArgs, Format, Participants, RecoverArgs, TableArgs, EXIT_AUDIT_FAILED, EXIT_OK,
};

const CHANNEL_WARNING: &str =
    "warning: shares are handled in the clear; this tool is not a secure channel";

/// Runs one subcommand and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Enumerate(a) => enumerate(a),
        Command::Table(a) => table(a),
        Command::AccessStructure(a) => access_structure(a),
        Command::Deal(a) => deal(a),
        Command::Recover(a) => recover(a),
        Command::Audit(a) => audit(a),
    }
}

fn modulus(p: u64) -> Result<PrimeModulus, CliError> {
    Ok(PrimeModulus::new(p)?)
}

fn resolve_ids(parts: &Participants) -> Result<Vec<u64>, CliError> {
    match (&parts.ids, parts.n) {
        (Some(ids), None) => Ok(ids.clone()),
        (None, Some(n)) => Ok((1..=n).collect()),
        _ => Err(CliError::param("give participants with --ids or --n")),
    }
}

fn path_string(path: Option<&Path>) -> Option<String> {
    path.map(|p| p.display().to_string())
}

fn to_json<T: Serialize>(doc: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(doc).map_err(|e| CliError {
        code: EXIT_AUDIT_FAILED,
        message: format!("serializing output: {e}"),
    })?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    emit(path, bytes).map_err(|e| CliError::io("writing output", e))
}

fn render_labels(labels: &[u64], descending: bool, open: char, close: char) -> String {
    let mut v = labels.to_vec();
    if descending {
        v.reverse();
    }
    let body: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("{open}{}{close}", body.join(", "))
}

fn coalition_doc(report: &CoalitionReport, manifest: RunManifest) -> CoalitionDoc {
    CoalitionDoc {
        version: DOC_VERSION,
        query: QueryDoc {
            t: report.t,
            j: report.j,
            r: report.r,
            p: report.p.value(),
            n: report.n,
        },
        minimal: report.minimal,
        count: report.count(),
        coalitions: report
            .coalitions
            .iter()
            .map(|c| c.labels().to_vec())
            .collect(),
        r_min: report.r_min,
        n_min: report.n_min,
        manifest,
    }
}

fn enumerate(a: EnumerateArgs) -> Result<i32, CliError> {
    let p = modulus(a.p)?;
    let mut report = if a.shortest {
        coalition::shortest_privileged(a.t, a.j, p, a.n)?
    } else if let Some(r) = a.r {
        let q = CoalitionQuery::new(a.t, a.j, r, p, a.n)?;
        if a.minimal {
            coalition::minimal_privileged_coalitions(&q)
        } else {
            coalition::privileged_coalitions(&q)
        }
    } else {
        coalition::sweep(a.t, a.j, p, a.n, a.minimal)?
    };
    if a.shortest && a.minimal {
        report.minimal = true;
    }

    let mut manifest = RunManifest::new("enumerate")
        .param("t", a.t)
        .param("j", a.j)
        .param("r", a.r)
        .param("p", a.p)
        .param("N", a.n)
        .param("minimal", a.minimal)
        .param("shortest", a.shortest);
    manifest.output = path_string(a.output.as_deref());

    let bytes = match a.format {
        Format::Json => to_json(&coalition_doc(&report, manifest))?,
        Format::Csv => {
            let mut s = String::from("r,coalition\n");
            for c in &report.coalitions {
                let mut labels = c.labels().to_vec();
                if a.descending {
                    labels.reverse();
                }
                let body: Vec<String> = labels.iter().map(u64::to_string).collect();
                let _ = writeln!(s, "{},{}", c.len(), body.join(" "));
            }
            s.into_bytes()
        }
        Format::Text => {
            let mut s = format!(
                "# t={} j={} r={} p={} N={} minimal={} count={}",
                report.t,
                report.j,
                report.r.map_or("all".to_string(), |r| r.to_string()),
                a.p,
                a.n,
                report.minimal,
                report.count()
            );
            if let (Some(r), Some(n)) = (report.r_min, report.n_min) {
                let _ = write!(s, " r_min={r} N_min={n}");
            }
            s.push('\n');
            for c in &report.coalitions {
                let line = if a.descending {
                    render_labels(c.labels(), true, '{', '}')
                } else {
                    render_labels(c.labels(), false, '(', ')')
                };
                s.push_str(&line);
                s.push('\n');
            }
            s.into_bytes()
        }
    };
    write_out(a.output.as_deref(), &bytes)?;
    Ok(EXIT_OK)
}

fn table(a: TableArgs) -> Result<i32, CliError> {
    let js: Vec<usize> = match &a.j {
        Some(js) => js.clone(),
        None => (1..a.t.saturating_sub(1)).collect(),
    };
    let mut primes = Vec::with_capacity(a.p.len());
    for &p in &a.p {
        let pm = modulus(p)?;
        if (a.t as u64) > p {
            return Err(CliError::param(format!(
                "violated t <= p (t = {}, p = {p})",
                a.t
            )));
        }
        primes.push(pm);
    }

    let mut cells = Vec::new();
    for &p in &primes {
        for &j in &js {
            let report = coalition::sweep(a.t, j, p, a.n, true)?;
            let mut per_length = report.per_length_counts();
            for r in coalition::valid_lengths(a.t, j).filter(|&r| r as u64 <= a.n) {
                per_length.entry(r).or_insert(0);
            }
            cells.push(TableCell {
                p: p.value(),
                j,
                count: report.count(),
                r_min: report.r_min,
                n_min: report.n_min,
                per_length,
            });
        }
    }

    let mut manifest = RunManifest::new("table")
        .param("t", a.t)
        .param("N", a.n)
        .param("p", a.p.clone())
        .param("j", js.clone())
        .param("per_length", a.per_length);
    manifest.output = path_string(a.output.as_deref());

    let bytes = match a.format {
        Format::Json => to_json(&TableDoc {
            version: DOC_VERSION,
            t: a.t,
            n: a.n,
            primes: a.p.clone(),
            js,
            cells,
            manifest,
        })?,
        Format::Csv | Format::Text if a.per_length => {
            let mut s = String::from("p,j,r,count\n");
            for c in &cells {
                for (r, n) in &c.per_length {
                    let _ = writeln!(s, "{},{},{r},{n}", c.p, c.j);
                }
            }
            s.into_bytes()
        }
        Format::Csv | Format::Text => table_csv(&a.p, &js, &cells).into_bytes(),
    };
    write_out(a.output.as_deref(), &bytes)?;
    Ok(EXIT_OK)
}

/// Rows are primes, columns are indices `j`, cells are aggregated counts.
pub fn table_csv(primes: &[u64], js: &[usize], cells: &[TableCell]) -> String {
    let mut s = String::from("p");
    for j in js {
        let _ = write!(s, ",j={j}");
    }
    s.push('\n');
    for &p in primes {
        s.push_str(&p.to_string());
        for &j in js {
            let count = cells
                .iter()
                .find(|c| c.p == p && c.j == j)
                .map_or(0, |c| c.count);
            let _ = write!(s, ",{count}");
        }
        s.push('\n');
    }
    s
}

fn access_structure(a: AccessArgs) -> Result<i32, CliError> {
    let p = modulus(a.p)?;
    let ids = resolve_ids(&a.participants)?;
    let cfg = SchemeConfig::new(a.t, p, &ids)?;
    let structure = scheme::derive_access_structure(&cfg)?;

    let families: Vec<FamilyDoc> = structure
        .families
        .iter()
        .enumerate()
        .map(|(j, fam)| FamilyDoc {
            j,
            sets: fam
                .iter()
                .map(|s| SetDoc {
                    members: s.members.labels().to_vec(),
                    kind: s.kind.as_str().to_string(),
                })
                .collect(),
        })
        .collect();

    let mut manifest = RunManifest::new("access-structure")
        .param("t", a.t)
        .param("p", a.p)
        .param("ids", cfg.identities().labels().to_vec());
    manifest.output = path_string(a.output.as_deref());

    let bytes = match a.format {
        Format::Json => to_json(&AccessDoc {
            version: DOC_VERSION,
            t: a.t,
            p: a.p,
            identities: cfg.identities().labels().to_vec(),
            families,
            unextended: structure.unextended_count(),
            manifest,
        })?,
        Format::Csv => {
            let mut s = String::from("j,kind,members\n");
            for fam in &families {
                for set in &fam.sets {
                    let body: Vec<String> = set.members.iter().map(u64::to_string).collect();
                    let _ = writeln!(s, "{},{},{}", fam.j, set.kind, body.join(" "));
                }
            }
            s.into_bytes()
        }
        Format::Text => {
            let mut s = String::new();
            for fam in &families {
                let _ = writeln!(s, "j={} ({} minimal sets)", fam.j, fam.sets.len());
                for set in &fam.sets {
                    let _ = writeln!(
                        s,
                        "  {} {}",
                        render_labels(&set.members, false, '{', '}'),
                        set.kind
                    );
                }
            }
            let _ = writeln!(s, "unextended tracks: {}", structure.unextended_count());
            s.into_bytes()
        }
    };
    write_out(a.output.as_deref(), &bytes)?;
    Ok(EXIT_OK)
}

fn shares_doc(table: &ShareTable, manifest: RunManifest) -> SharesDoc {
    SharesDoc {
        version: DOC_VERSION,
        p: table.p.value(),
        t: table.t,
        participants: table
            .shares
            .iter()
            .map(|s| ParticipantDoc {
                id: s.id,
                share: s.value.value(),
            })
            .collect(),
        manifest,
    }
}

fn deal(a: DealArgs) -> Result<i32, CliError> {
    let p = modulus(a.p)?;
    let ids = resolve_ids(&a.participants)?;
    let cfg = SchemeConfig::new(a.t, p, &ids)?;

    let sv = match (&a.secrets, a.blinding, a.seed) {
        (Some(secrets), Some(blinding), None) => {
            if secrets.len() != cfg.secret_count() {
                return Err(CliError::param(format!(
                    "expected {} secrets for t = {}, got {}",
                    cfg.secret_count(),
                    a.t,
                    secrets.len()
                )));
            }
            if let Some(v) = secrets.iter().chain([&blinding]).find(|&&v| v >= a.p) {
                return Err(CliError::param(format!(
                    "coefficient {v} is not reduced mod {}",
                    a.p
                )));
            }
            SecretVector::from_values(secrets, blinding, p)?
        }
        (None, None, Some(seed)) => {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            SecretVector::random(&mut rng, a.t, p)
        }
        _ => {
            return Err(CliError::param(
                "give either --secrets with --blinding, or --seed",
            ))
        }
    };
    let table = scheme::deal(&cfg, &sv)?;

    let mut manifest = RunManifest::new("deal")
        .param("t", a.t)
        .param("p", a.p)
        .param("ids", cfg.identities().labels().to_vec());
    manifest.seed = a.seed;
    manifest.output = path_string(a.output.as_deref());

    eprintln!("{CHANNEL_WARNING}");
    if a.show_secrets {
        let secrets: Vec<String> = sv.secrets().iter().map(|s| s.value().to_string()).collect();
        eprintln!("secrets: {}", secrets.join(","));
        eprintln!("blinding: {}", sv.blinding().value());
    }
    write_out(
        a.output.as_deref(),
        &to_json(&shares_doc(&table, manifest))?,
    )?;
    Ok(EXIT_OK)
}

/// Parses and validates a shares file.
pub fn load_shares(path: &Path) -> Result<(SchemeConfig, Vec<Share>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::param(format!("reading {}: {e}", path.display())))?;
    let doc: SharesDoc = serde_json::from_str(&text)
        .map_err(|e| CliError::param(format!("parsing {}: {e}", path.display())))?;
    if doc.version != DOC_VERSION {
        return Err(CliError::param(format!(
            "unsupported shares file version {}",
            doc.version
        )));
    }
    let p = modulus(doc.p)?;
    let ids: Vec<u64> = doc.participants.iter().map(|s| s.id).collect();
    let cfg = SchemeConfig::new(doc.t, p, &ids)?;
    let mut shares = Vec::with_capacity(doc.participants.len());
    for s in &doc.participants {
        if s.share >= doc.p {
            return Err(CliError::param(format!(
                "share {} of {} is not reduced mod {}",
                s.share, s.id, doc.p
            )));
        }
        shares.push(Share {
            id: s.id,
            value: p.elem(s.share),
        });
    }
    Ok((cfg, shares))
}

fn recover(a: RecoverArgs) -> Result<i32, CliError> {
    let (cfg, shares) = load_shares(&a.shares)?;
    let table = ShareTable {
        t: cfg.t(),
        p: cfg.p(),
        shares,
    };
    let chosen = match &a.subset {
        Some(ids) => table.select(ids)?,
        None => table.shares.clone(),
    };
    eprintln!("{CHANNEL_WARNING}");
    let rec = scheme::recover(&cfg, &chosen, a.j)?;
    let mut s = format!("{}\n", rec.value.value());
    if a.explain {
        match &rec.route {
            Route::Full { used } => {
                let _ = writeln!(
                    s,
                    "route: full solve on {}",
                    render_labels(used, false, '(', ')')
                );
            }
            Route::Privileged {
                coalition,
                extension,
            } => {
                let _ = writeln!(
                    s,
                    "route: privileged coalition {} completed by auxiliary points {}",
                    render_labels(coalition, false, '(', ')'),
                    render_labels(extension, false, '(', ')')
                );
            }
        }
    }
    write_out(None, s.as_bytes())?;
    Ok(EXIT_OK)
}

fn audit_doc(report: &AuditReport, ideal: bool, manifest: RunManifest) -> AuditDoc {
    AuditDoc {
        version: DOC_VERSION,
        t: report.t,
        p: report.p,
        identities: report.identities.clone(),
        domain: report.domain.as_str().to_string(),
        conditioning: report.conditioning.as_str().to_string(),
        polynomials: report.polynomials,
        ideal,
        correctness_failures: report.correctness_failures,
        leaky: report.leaky,
        pass: report.pass,
        entries: report
            .entries
            .iter()
            .map(|e| AuditEntryDoc {
                subset: e.subset.clone(),
                j: e.j,
                authorized: e.authorized,
                verdict: e.verdict.as_str().to_string(),
                witness: e.witness.as_ref().map(|w| WitnessDoc {
                    known_indices: w.known_indices.clone(),
                    known_values: w.known_values.clone(),
                    share_values: w.share_values.clone(),
                    histogram: w.histogram.0.clone(),
                    reference: w.reference.0.clone(),
                }),
            })
            .collect(),
        manifest,
    }
}

fn audit(a: AuditArgs) -> Result<i32, CliError> {
    let p = modulus(a.p)?;
    let ids = resolve_ids(&a.participants)?;
    let cfg = SchemeConfig::new(a.t, p, &ids)?;
    let domain = match a.domain {
        DomainArg::FullField => Domain::FullField,
        DomainArg::AllNonzero => Domain::AllNonzero,
        DomainArg::Unrestricted => Domain::Unrestricted,
    };
    let conditioning = match a.conditioning {
        ConditioningArg::Computable => Conditioning::Computable,
        ConditioningArg::AllSubsets => Conditioning::AllSubsets,
    };
    let report = audit::perfectness_report(&cfg, domain, conditioning)?;
    let ideal = audit::ideality_check(&cfg);

    let mut manifest = RunManifest::new("audit")
        .param("t", a.t)
        .param("p", a.p)
        .param("ids", cfg.identities().labels().to_vec())
        .param("domain", domain.as_str())
        .param("conditioning", conditioning.as_str());
    manifest.output = path_string(a.output.as_deref());

    let bytes = match a.format {
        Format::Json => to_json(&audit_doc(&report, ideal, manifest))?,
        Format::Csv => {
            let mut s = String::from("subset,j,authorized,verdict\n");
            for e in &report.entries {
                let body: Vec<String> = e.subset.iter().map(u64::to_string).collect();
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    body.join(" "),
                    e.j,
                    e.authorized,
                    e.verdict.as_str()
                );
            }
            s.into_bytes()
        }
        Format::Text => audit_text(&report, ideal).into_bytes(),
    };
    write_out(a.output.as_deref(), &bytes)?;
    Ok(if report.pass {
        EXIT_OK
    } else {
        EXIT_AUDIT_FAILED
    })
}

fn audit_text(report: &AuditReport, ideal: bool) -> String {
    let mut s = format!(
        "domain={} conditioning={} polynomials={} entries={}\n",
        report.domain.as_str(),
        report.conditioning.as_str(),
        report.polynomials,
        report.entries.len()
    );
    let _ = writeln!(
        s,
        "correctness failures: {}\nleaky entries: {}\nideal: {ideal}",
        report.correctness_failures, report.leaky
    );
    for e in report
        .entries
        .iter()
        .filter(|e| !e.correct() || e.witness.is_some())
    {
        let _ = write!(
            s,
            "  {} j={} authorized={} verdict={}",
            render_labels(&e.subset, false, '{', '}'),
            e.j,
            e.authorized,
            e.verdict.as_str()
        );
        if let Some(w) = &e.witness {
            let _ = write!(
                s,
                " given s{:?}={:?} shares={:?} counts={:?} reference={:?}",
                w.known_indices, w.known_values, w.share_values, w.histogram.0, w.reference.0
            );
        }
        s.push('\n');
    }
    let _ = writeln!(s, "{}", if report.pass { "PASS" } else { "FAIL" });
    s
}
