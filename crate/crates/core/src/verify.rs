//! Executable checks for the quotient-homology claims, and the suite that
//! runs them end to end for a prime `p`.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::action::{is_free_action, quotient_complex, Freeness, GroupAction};
use crate::complex::{order_complex, DeltaComplex};
use crate::error::{Error, Result};
use crate::group::{is_prime, PermutationGroup};
use crate::homology::{homology, Coefficients, HomologyReport, IntegralGroup};
use crate::poset::{build_reduced_partition_lattice, build_reduced_subset_lattice};

/// Assumption attached to verdicts that rely on simple connectivity of the
/// covering complex, which is taken as given rather than computed.
pub const ASSUMES_SIMPLY_CONNECTED: &str = "assumes simply connected";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    /// `H_1(Δ(L_p)/C_p; Z) ≅ Z/p`
    #[serde(rename = "eq1")]
    Eq1,
    /// `H_{p−2}(Δ(L_p)/C_p; Z) ≅ Z`
    #[serde(rename = "eq2")]
    Eq2,
    /// `H_1(Δ(Π̄_p)/C_p; Z) ≅ Z/p`
    #[serde(rename = "eq3")]
    Eq3,
    /// `H_{p−3}(Δ(Π̄_p)/C_p; Z) ≅ Z^{((p−1)!−(p−1))/p}`
    #[serde(rename = "eq4")]
    Eq4,
    #[serde(rename = "lemma-free-Lp")]
    LemmaFreeLp,
    #[serde(rename = "lemma-free-Pip")]
    LemmaFreePip,
    #[serde(rename = "lemma-bettis")]
    LemmaBettis,
    #[serde(rename = "thm-euler")]
    ThmEuler,
    #[serde(rename = "wedge-obstruction")]
    WedgeObstruction,
    /// `Δ(L_p)` has the homology of a `(p−2)`-sphere.
    #[serde(rename = "sphere-Lp")]
    SphereLp,
    /// `Δ(Π̄_p)` has the homology of a wedge of `(p−1)!` spheres.
    #[serde(rename = "wedge-count-Pip")]
    WedgeCountPip,
    /// `|S_d(Δ/G)| · |G| = |S_d(Δ)|` for every `d`.
    #[serde(rename = "quotient-f-vector")]
    QuotientFVector,
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).map_err(|_| fmt::Error)?;
        f.write_str(s.as_str().unwrap_or_default())
    }
}

/// Outcome of one check. `pass` holds exactly when `expected == computed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: ClaimId,
    pub subject: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    #[serde(default)]
    pub assumptions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub millis: u64,
}

impl Verdict {
    pub fn new(
        claim: ClaimId,
        subject: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
    ) -> Self {
        let (expected, computed) = (expected.into(), computed.into());
        Verdict {
            claim,
            subject: subject.into(),
            pass: expected == computed,
            expected,
            computed,
            assumptions: Vec::new(),
            detail: None,
            millis: 0,
        }
    }

    pub fn assuming(mut self, assumption: &str) -> Self {
        self.assumptions.push(assumption.to_string());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn timed(mut self, since: Instant) -> Self {
        self.millis = since.elapsed().as_millis() as u64;
        self
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<18} {}: expected {}, computed {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.claim.to_string(),
            self.subject,
            self.expected,
            self.computed
        )?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        if !self.assumptions.is_empty() {
            write!(f, " [{}]", self.assumptions.join("; "))?;
        }
        Ok(())
    }
}

/// Rational Betti numbers of `Δ/G` when `Δ` is homotopy equivalent to a
/// wedge of `k` spheres of dimension `d > 0` and `G` acts freely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiPrediction {
    pub k: u64,
    pub d: usize,
    pub group_order: u64,
    /// Predicted `β_i^Q(Δ/G)` for `i = 0..=d`.
    pub predicted: Vec<u64>,
}

impl BettiPrediction {
    pub fn top(&self) -> u64 {
        self.predicted[self.d]
    }
}

pub fn predict_quotient_betti(k: u64, d: usize, group_order: u64) -> Result<BettiPrediction> {
    if d == 0 {
        return Err(Error::invalid("sphere dimension must be positive"));
    }
    if group_order == 0 {
        return Err(Error::invalid("group order must be positive"));
    }
    let (k, g) = (k as i128, group_order as i128);
    let top = if d.is_multiple_of(2) {
        if (k + 1) % g != 0 {
            return Err(Error::invalid(format!(
                "|G| = {g} does not divide k + 1 = {}; no free action exists",
                k + 1
            )));
        }
        (k + 1) / g - 1
    } else {
        if (k - 1) % g != 0 {
            return Err(Error::invalid(format!(
                "|G| = {g} does not divide k - 1 = {}; no free action exists",
                k - 1
            )));
        }
        (k - 1) / g + 1
    };
    if top < 0 {
        return Err(Error::invalid(format!(
            "k = {k}, d = {d}, |G| = {g} predicts a negative Betti number"
        )));
    }
    let mut predicted = vec![0u64; d + 1];
    predicted[0] = 1;
    predicted[d] += top as u64;
    Ok(BettiPrediction {
        k: k as u64,
        d,
        group_order,
        predicted,
    })
}

/// Homology of a wedge of `k` spheres of dimension `d > 0`, dimensions
/// `0..=d`.
pub fn wedge_of_spheres_homology(k: usize, d: usize) -> Vec<IntegralGroup> {
    (0..=d)
        .map(|i| IntegralGroup {
            dim: i,
            free_rank: match i {
                0 => 1,
                i if i == d => k,
                _ => 0,
            },
            torsion: Vec::new(),
        })
        .collect()
}

fn summary(groups: &[IntegralGroup]) -> String {
    groups
        .iter()
        .map(|g| format!("H_{} = {}", g.dim, g))
        .collect::<Vec<_>>()
        .join(", ")
}

fn tuple(values: &[impl fmt::Display]) -> String {
    let inner: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("({})", inner.join(", "))
}

fn cyclic_group_string(invariants: &[u64]) -> String {
    if invariants.is_empty() {
        return "0".into();
    }
    invariants
        .iter()
        .map(|d| format!("Z/{d}"))
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

fn integral(report: &HomologyReport) -> Result<&[IntegralGroup]> {
    report
        .integral
        .as_deref()
        .ok_or_else(|| Error::FieldNotComputed("Z".into()))
}

fn h1(report: &HomologyReport) -> Result<IntegralGroup> {
    Ok(integral(report)?.get(1).cloned().unwrap_or(IntegralGroup {
        dim: 1,
        free_rank: 0,
        torsion: Vec::new(),
    }))
}

/// Compares `H_1` of a free quotient with the abelian invariants of the
/// group, given the quotient's integral homology.
fn free_act_h1_verdict(
    claim: ClaimId,
    subject: &str,
    quotient: &HomologyReport,
    group: &PermutationGroup,
) -> Result<Verdict> {
    let invariants = group
        .abelian_invariants()
        .ok_or_else(|| Error::invalid("H_1 comparison needs an abelian group"))?;
    let expected = IntegralGroup {
        dim: 1,
        free_rank: 0,
        torsion: invariants.iter().map(|&d| BigInt::from(d)).collect(),
    };
    let computed = h1(quotient)?;
    Ok(
        Verdict::new(claim, subject, expected.to_string(), computed.to_string())
            .with_detail(format!(
                "abelian invariants of G: {}",
                cyclic_group_string(&invariants)
            ))
            .assuming(ASSUMES_SIMPLY_CONNECTED),
    )
}

/// Checks that `H_1(Δ/G; Z)` is the abelian group `G` itself, for a free
/// action of an abelian group on a complex assumed simply connected.
pub fn check_free_act_h1(complex: &DeltaComplex, action: &GroupAction<'_>) -> Result<Verdict> {
    let start = Instant::now();
    if !action.group().is_abelian() {
        return Err(Error::invalid("H_1 comparison needs an abelian group"));
    }
    let quotient = quotient_complex(complex, action)?;
    let report = homology(&quotient, &[Coefficients::Integers])?;
    Ok(free_act_h1_verdict(ClaimId::Eq1, "Delta/G", &report, action.group())?.timed(start))
}

/// Result of the one-sided wedge-of-spheres test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WedgeVerdict {
    /// Integral homology is free; this does not prove the complex is a wedge.
    PossiblyWedge,
    /// Torsion in some `H_i`, `i ≥ 1`, rules out a wedge of spheres.
    NotWedge { dim: usize, torsion: Vec<BigInt> },
}

impl WedgeVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            WedgeVerdict::PossiblyWedge => "possibly-wedge",
            WedgeVerdict::NotWedge { .. } => "not-wedge",
        }
    }
}

impl fmt::Display for WedgeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WedgeVerdict::PossiblyWedge => f.write_str("possibly-wedge"),
            WedgeVerdict::NotWedge { dim, torsion } => {
                let t: Vec<String> = torsion.iter().map(|d| format!("Z/{d}")).collect();
                write!(f, "not-wedge (torsion {} in H_{dim})", t.join(" ⊕ "))
            }
        }
    }
}

pub fn check_wedge_obstruction(report: &HomologyReport) -> Result<WedgeVerdict> {
    Ok(integral(report)?
        .iter()
        .find(|g| g.dim >= 1 && !g.torsion.is_empty())
        .map_or(WedgeVerdict::PossiblyWedge, |g| WedgeVerdict::NotWedge {
            dim: g.dim,
            torsion: g.torsion.clone(),
        }))
}

fn wedge_verdict(subject: String, expected: &str, wedge: &WedgeVerdict) -> Verdict {
    let v = Verdict::new(ClaimId::WedgeObstruction, subject, expected, wedge.kind());
    match wedge {
        WedgeVerdict::PossiblyWedge => v,
        WedgeVerdict::NotWedge { .. } => v.with_detail(wedge.to_string()),
    }
}

/// Rational homology of a free quotient must vanish wherever the covering
/// complex's rational homology vanishes.
pub fn check_transfer_vanishing(
    full: &HomologyReport,
    quotient: &HomologyReport,
) -> Result<Verdict> {
    let a = full.betti(Coefficients::Rationals)?;
    let b = quotient.betti(Coefficients::Rationals)?;
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "reports cover {} and {} dimensions",
            a.len(),
            b.len()
        )));
    }
    let vanishing: Vec<usize> = (0..a.len()).filter(|&i| a[i] == 0).collect();
    let computed: Vec<usize> = vanishing.iter().map(|&i| b[i]).collect();
    Ok(Verdict::new(
        ClaimId::LemmaBettis,
        "transfer vanishing",
        tuple(&vec![0usize; vanishing.len()]),
        tuple(&computed),
    )
    .with_detail(format!("dimensions {}", tuple(&vanishing))))
}

/// Configuration of a suite run.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub p: usize,
    pub include_partition: bool,
    pub include_subset: bool,
    /// Generators in cycle notation; `None` means `⟨(1 2 … p)⟩`.
    pub group: Option<Vec<String>>,
    /// Fields for the Euler-characteristic cross-checks; defaults to
    /// `Q, F_2, F_p`.
    pub fields: Option<Vec<Coefficients>>,
    pub max_simplices: Option<u128>,
    pub time_budget: Option<Duration>,
}

impl SuiteOptions {
    pub fn new(p: usize) -> Self {
        SuiteOptions {
            p,
            include_partition: true,
            include_subset: true,
            group: None,
            fields: None,
            max_simplices: None,
            time_budget: None,
        }
    }
}

/// Homology computed for one complex, reported without asserting anything
/// beyond the claims above.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exploration {
    pub subject: String,
    pub f_vector: Vec<usize>,
    pub homology: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub p: usize,
    pub group: String,
    pub verdicts: Vec<Verdict>,
    pub exploratory: Vec<Exploration>,
    pub incomplete: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    /// True when every claim was checked and passed.
    pub fn passed(&self) -> bool {
        !self.incomplete && !self.verdicts.is_empty() && self.verdicts.iter().all(|v| v.pass)
    }

    pub fn verdict(&self, claim: ClaimId) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.claim == claim)
    }

    pub fn verdicts_for(&self, claim: ClaimId) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(move |v| v.claim == claim)
    }

    /// Zeroes timings so the report is reproducible byte for byte.
    pub fn strip_timings(&mut self) {
        for v in &mut self.verdicts {
            v.millis = 0;
        }
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Subset,
    Partition,
}

struct SuiteRun<'o> {
    opts: &'o SuiteOptions,
    start: Instant,
    report: SuiteReport,
}

impl SuiteRun<'_> {
    fn out_of_time(&mut self, stage: &str) -> bool {
        match self.opts.time_budget {
            Some(budget) if self.start.elapsed() > budget => {
                self.report.incomplete = true;
                self.report
                    .notes
                    .push(format!("time budget exhausted before {stage}"));
                true
            }
            _ => false,
        }
    }

    fn push(&mut self, v: Verdict) {
        self.report.verdicts.push(v);
    }

    fn group(&self) -> Result<PermutationGroup> {
        match &self.opts.group {
            None => Ok(PermutationGroup::cyclic(self.opts.p)),
            Some(gens) => PermutationGroup::from_cycle_strings(self.opts.p, gens),
        }
    }

    fn fields(&self) -> Vec<Coefficients> {
        self.opts.fields.clone().unwrap_or_else(|| {
            let mut f = vec![Coefficients::Rationals, Coefficients::Prime(2)];
            if self.opts.p != 2 {
                f.push(Coefficients::Prime(self.opts.p as u32));
            }
            f
        })
    }

    fn run_target(&mut self, target: Target) -> Result<()> {
        let p = self.opts.p;
        let (poset, name, free_claim) = match target {
            Target::Subset => (
                build_reduced_subset_lattice(p)?,
                format!("L_{p}"),
                ClaimId::LemmaFreeLp,
            ),
            Target::Partition => (
                build_reduced_partition_lattice(p)?,
                format!("Pibar_{p}"),
                ClaimId::LemmaFreePip,
            ),
        };
        let total: u128 = poset.chain_counts().iter().sum();
        if let Some(cap) = self.opts.max_simplices {
            if total > cap {
                self.report.incomplete = true;
                self.report.notes.push(format!(
                    "Delta({name}) has {total} simplices, above the cap of {cap}; skipped"
                ));
                return Ok(());
            }
        }
        let group = self.group()?;
        let gname = match &self.opts.group {
            None => format!("C_{p}"),
            Some(_) => format!(
                "<{}>",
                group
                    .generators()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        };
        self.report.group = gname.clone();
        let full_name = format!("Delta({name})");
        let quot_name = format!("Delta({name})/{gname}");

        let t = Instant::now();
        let action = GroupAction::new(group.clone(), &poset)?;
        let freeness = is_free_action(&action);
        let computed = match &freeness {
            Freeness::Free => "free".to_string(),
            Freeness::Fixed(w) => format!("not free: {w}"),
        };
        self.push(
            Verdict::new(free_claim, format!("{gname} on {name}"), "free", computed).timed(t),
        );

        if self.out_of_time(&format!("homology of {full_name}")) {
            return Ok(());
        }
        let fields = self.fields();
        let mut coeffs = vec![Coefficients::Integers];
        coeffs.extend(fields.iter().copied());
        if !coeffs.contains(&Coefficients::Rationals) {
            coeffs.push(Coefficients::Rationals);
        }

        let t = Instant::now();
        let full = order_complex(&poset);
        let full_h = homology(&full, &coeffs)?;
        let full_groups = integral(&full_h)?.to_vec();
        let full_ms = t.elapsed();
        self.report.exploratory.push(Exploration {
            subject: full_name.clone(),
            f_vector: full.f_vector().0,
            homology: summary(&full_groups),
        });

        // Upstream shape: a sphere, or a wedge of (p−1)! spheres.
        let (k, d) = match target {
            Target::Subset => (1usize, p - 2),
            Target::Partition => (factorial(p - 1) as usize, p - 3),
        };
        let upstream_claim = match target {
            Target::Subset => ClaimId::SphereLp,
            Target::Partition => ClaimId::WedgeCountPip,
        };
        let mut v = Verdict::new(
            upstream_claim,
            full_name.clone(),
            summary(&wedge_of_spheres_homology(k, d)),
            summary(&full_groups),
        );
        v.millis = full_ms.as_millis() as u64;
        self.push(v);
        self.euler_verdicts(&full_name, &full, &full_h, &fields);
        let wedge = check_wedge_obstruction(&full_h)?;
        self.push(wedge_verdict(full_name.clone(), "possibly-wedge", &wedge));

        if !freeness.is_free() {
            self.report.notes.push(format!(
                "{quot_name} not built: the action is not free ({})",
                match freeness {
                    Freeness::Fixed(w) => w.to_string(),
                    Freeness::Free => unreachable!(),
                }
            ));
            return Ok(());
        }
        if self.out_of_time(&format!("homology of {quot_name}")) {
            return Ok(());
        }

        let t = Instant::now();
        let quotient = quotient_complex(&full, &action)?;
        let quot_h = homology(&quotient, &coeffs)?;
        let quot_groups = integral(&quot_h)?.to_vec();
        let quot_ms = t.elapsed().as_millis() as u64;
        self.report.exploratory.push(Exploration {
            subject: quot_name.clone(),
            f_vector: quotient.f_vector().0,
            homology: summary(&quot_groups),
        });

        let order = group.order();
        let scaled: Vec<usize> = quotient.f_vector().0.iter().map(|c| c * order).collect();
        self.push(
            Verdict::new(
                ClaimId::QuotientFVector,
                format!("{quot_name} times |G| = {order}"),
                tuple(&full.f_vector().0),
                tuple(&scaled),
            )
            .with_detail(format!(
                "chi(quotient) * |G| = {}, chi(full) = {}",
                quotient.euler_characteristic() * order as i64,
                full.euler_characteristic()
            )),
        );

        // H_1 against the group (Lemma for free abelian actions).
        let (h1_claim, top_claim) = match target {
            Target::Subset => (ClaimId::Eq1, ClaimId::Eq2),
            Target::Partition => (ClaimId::Eq3, ClaimId::Eq4),
        };
        if group.is_abelian() {
            let mut v =
                free_act_h1_verdict(h1_claim, &format!("H_1({quot_name})"), &quot_h, &group)?;
            v.millis = quot_ms;
            self.push(v);
        } else {
            self.report
                .notes
                .push(format!("{h1_claim} skipped: the group is not abelian"));
        }

        // Top homology: closed form for C_p, Lemma-style prediction otherwise.
        let prediction = predict_quotient_betti(k as u64, d, order as u64);
        let expected_rank = match (target, &self.opts.group) {
            (Target::Subset, None) => Some(1u64),
            (Target::Partition, None) => Some((factorial(p - 1) - (p as u64 - 1)) / p as u64),
            (_, Some(_)) => prediction.as_ref().ok().map(BettiPrediction::top),
        };
        let computed_top = quot_groups.get(d).cloned().unwrap_or(IntegralGroup {
            dim: d,
            free_rank: 0,
            torsion: Vec::new(),
        });
        let expected_top = IntegralGroup {
            dim: d,
            free_rank: expected_rank.unwrap_or(0) as usize,
            torsion: Vec::new(),
        };
        let mut v = Verdict::new(
            top_claim,
            format!("H_{d}({quot_name})"),
            expected_top.to_string(),
            computed_top.to_string(),
        );
        v.millis = quot_ms;
        self.push(v);

        match prediction {
            Ok(pred) => {
                let betti = quot_h.betti(Coefficients::Rationals)?;
                self.push(
                    Verdict::new(
                        ClaimId::LemmaBettis,
                        format!("rational Betti numbers of {quot_name} (k = {k}, d = {d})"),
                        tuple(&pred.predicted),
                        tuple(betti),
                    )
                    .with_detail(format!("predicted beta_{d} = {}", pred.top())),
                );
            }
            Err(e) => self.report.notes.push(format!("no Betti prediction: {e}")),
        }
        let transfer = check_transfer_vanishing(&full_h, &quot_h)?;
        self.push(Verdict {
            subject: format!("transfer vanishing {full_name} -> {quot_name}"),
            ..transfer
        });

        self.euler_verdicts(&quot_name, &quotient, &quot_h, &fields);
        let wedge = check_wedge_obstruction(&quot_h)?;
        self.push(wedge_verdict(quot_name, "not-wedge", &wedge));
        Ok(())
    }

    fn euler_verdicts(
        &mut self,
        name: &str,
        complex: &DeltaComplex,
        report: &HomologyReport,
        fields: &[Coefficients],
    ) {
        let chi = complex.euler_characteristic();
        for &field in fields {
            let computed = report
                .euler_from_betti(field)
                .map_or_else(|e| e.to_string(), |x| x.to_string());
            self.push(Verdict::new(
                ClaimId::ThmEuler,
                format!("{name} over {field}"),
                chi.to_string(),
                computed,
            ));
        }
    }
}

/// Runs every claim for prime `p`: lattices, order complexes, freeness,
/// quotients, homology over `Z`, `Q`, `F_2`, `F_p`, predictions, Euler
/// cross-checks, and the wedge obstruction.
pub fn run_paper_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    if !is_prime(opts.p as u64) {
        return Err(Error::invalid(format!("p = {} is not prime", opts.p)));
    }
    if opts.p < 5 {
        return Err(Error::invalid(format!(
            "the suite needs a prime p >= 5, got {}",
            opts.p
        )));
    }
    let mut run = SuiteRun {
        opts,
        start: Instant::now(),
        report: SuiteReport {
            p: opts.p,
            group: String::new(),
            verdicts: Vec::new(),
            exploratory: Vec::new(),
            incomplete: false,
            notes: Vec::new(),
        },
    };
    if opts.include_subset {
        run.run_target(Target::Subset)?;
    }
    if opts.include_partition && !run.out_of_time("the partition lattice") {
        run.run_target(Target::Partition)?;
    }
    Ok(run.report)
}
