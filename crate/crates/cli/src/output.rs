//! Report shapes and renderers.
//!
//! JSON is the machine-facing compatibility surface: the structs here
//! serialize in declaration order and every report carries a trailing
//! `config` object echoing the effective limits, so two runs with the
//! same inputs and limits are byte-identical. Big integers serialize as
//! decimal strings. Text output is for humans and makes no stability
//! promise beyond the examples pinned in the test suite.

use serde::Serialize;

use fset_core::construct::{CriterionReport, FamilyMember, LevelReport};
use fset_core::field::FieldElement;
use fset_core::fset::{
    ClosureState, FamilyVerification, ProbeLevel, ProbeReport, Violation,
};
use fset_core::poly::Polynomial;

/// Effective limits for this run, echoed at the end of every JSON
/// report.
#[derive(Serialize, Clone, Copy)]
pub struct ConfigEcho {
    pub p: u64,
    pub degree_cap: usize,
    pub iter_cap: u64,
    pub edf_seed: u64,
    pub factor_budget: u64,
    pub format: &'static str,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize without error")
}

// ---------------------------------------------------------------------
// gen

#[derive(Serialize)]
pub struct GenReport {
    pub p: u64,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<i64>,
    pub poly: String,
    pub degree: usize,
    pub config: ConfigEcho,
}

// ---------------------------------------------------------------------
// irred / order / factor

#[derive(Serialize)]
pub struct IrredReport {
    pub p: u64,
    pub poly: String,
    pub degree: Option<usize>,
    pub irreducible: bool,
    pub config: ConfigEcho,
}

#[derive(Serialize)]
pub struct OrderReport {
    pub p: u64,
    pub poly: String,
    pub degree: usize,
    /// Decimal.
    pub order: String,
    pub config: ConfigEcho,
}

#[derive(Serialize)]
pub struct FactorEntry {
    pub poly: String,
    pub multiplicity: u32,
}

#[derive(Serialize)]
pub struct FactorReport {
    pub p: u64,
    pub poly: String,
    pub unit: u64,
    pub factors: Vec<FactorEntry>,
    pub config: ConfigEcho,
}

/// Renders a factorization as a product, e.g.
/// `x^3 * (x+1) * (x^2+x+1)` — multi-term factors parenthesized, the
/// unit prefixed only when it is not 1 (or there are no factors).
pub fn render_factorization(unit: FieldElement, factors: &[(Polynomial, u32)]) -> String {
    let mut parts = Vec::new();
    if unit.value() != 1 || factors.is_empty() {
        parts.push(unit.to_string());
    }
    for (poly, multiplicity) in factors {
        // The only irreducible with a single nonzero term is x itself,
        // so the unparenthesized power is unambiguous.
        let base = if poly.nonzero_terms() == 1 {
            poly.to_string()
        } else {
            format!("({poly})")
        };
        parts.push(if *multiplicity == 1 {
            base
        } else {
            format!("{base}^{multiplicity}")
        });
    }
    parts.join(" * ")
}

// ---------------------------------------------------------------------
// criterion (shared by verify and probe)

#[derive(Serialize)]
pub struct CriterionDto {
    pub degree: usize,
    /// Decimal.
    pub order: String,
    pub t: u64,
    pub t_primes: Vec<u64>,
    /// Decimal: (p^degree - 1) / order.
    pub cofactor: String,
    pub passed: bool,
    pub failures: Vec<&'static str>,
}

impl From<&CriterionReport> for CriterionDto {
    fn from(c: &CriterionReport) -> Self {
        CriterionDto {
            degree: c.degree,
            order: c.order.to_string(),
            t: c.t,
            t_primes: c.t_primes.clone(),
            cofactor: c.cofactor.to_string(),
            passed: c.passed,
            failures: c.failures.iter().map(|f| f.tag()).collect(),
        }
    }
}

// ---------------------------------------------------------------------
// closure

#[derive(Serialize)]
pub struct ClosureReport {
    pub p: u64,
    pub seeds: Vec<String>,
    pub status: &'static str,
    pub members: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub iterations: u64,
    pub config: ConfigEcho,
}

impl ClosureReport {
    pub fn new(state: &ClosureState, seeds: &[Polynomial], config: ConfigEcho) -> Self {
        ClosureReport {
            p: state.field().p(),
            seeds: seeds.iter().map(|s| s.to_string()).collect(),
            status: state.status().tag(),
            members: state.members().iter().map(|m| m.to_string()).collect(),
            edges: state
                .edges()
                .iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
            iterations: state.iterations(),
            config,
        }
    }
}

pub fn render_closure_text(state: &ClosureState) -> String {
    let mut out = String::new();
    out.push_str(&format!("p: {}\n", state.field().p()));
    out.push_str(&format!("status: {}\n", state.status().tag()));
    out.push_str(&format!("members ({}):\n", state.members().len()));
    for m in state.members() {
        out.push_str(&format!("  {m}\n"));
    }
    out.push_str(&format!("edges ({}):\n", state.edges().len()));
    for (a, b) in state.edges() {
        out.push_str(&format!("  {a} -> {b}\n"));
    }
    out
}

// ---------------------------------------------------------------------
// verify

#[derive(Serialize)]
pub struct GateEcho {
    pub residue9: u64,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct LevelDto {
    pub level: u32,
    pub kind: &'static str,
    pub poly: String,
    pub degree: usize,
    pub monic: bool,
    pub irreducible: bool,
    /// Absent only when the level failed irreducibility.
    pub criterion: Option<CriterionDto>,
    pub shift_identity: bool,
}

impl From<&LevelReport> for LevelDto {
    fn from(l: &LevelReport) -> Self {
        LevelDto {
            level: l.level,
            kind: l.kind.label(),
            poly: l.poly.to_string(),
            degree: l.degree,
            monic: l.monic,
            irreducible: l.irreducible,
            criterion: l.criterion.as_ref().map(CriterionDto::from),
            shift_identity: l.shift_identity,
        }
    }
}

#[derive(Serialize)]
pub struct MemberDto {
    pub kind: &'static str,
    pub index: i64,
    pub poly: String,
    pub degree: usize,
}

impl From<&FamilyMember> for MemberDto {
    fn from(m: &FamilyMember) -> Self {
        MemberDto {
            kind: m.kind.label(),
            index: m.index,
            poly: m.poly.to_string(),
            degree: m.poly.degree().unwrap_or(0),
        }
    }
}

#[derive(Serialize)]
pub struct WitnessDto {
    pub poly: String,
    pub irreducible: bool,
    pub in_family: bool,
}

#[derive(Serialize)]
pub struct ViolationDto {
    pub member: String,
    pub missing_factor: String,
}

impl From<&Violation> for ViolationDto {
    fn from(v: &Violation) -> Self {
        ViolationDto {
            member: v.member.to_string(),
            missing_factor: v.missing_factor.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct VerdictDto {
    pub closed: bool,
    pub trivial_empty: bool,
    pub violations: Vec<ViolationDto>,
    pub unverifiable: Vec<String>,
    pub nontrivial_witness: Option<String>,
    pub infinite_certificate: Option<&'static str>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub p: u64,
    pub max_level: u32,
    pub gate: GateEcho,
    pub levels: Vec<LevelDto>,
    pub members: Vec<MemberDto>,
    pub edges: Vec<[String; 2]>,
    pub witness: WitnessDto,
    pub verdict: VerdictDto,
    pub passed: bool,
    pub config: ConfigEcho,
}

impl VerifyReport {
    pub fn new(v: &FamilyVerification, config: ConfigEcho) -> Self {
        VerifyReport {
            p: v.p,
            max_level: v.max_level,
            gate: GateEcho {
                residue9: v.p % 9,
                passed: true,
            },
            levels: v.levels.iter().map(LevelDto::from).collect(),
            members: v.members.iter().map(MemberDto::from).collect(),
            edges: v
                .edges
                .iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
            witness: WitnessDto {
                poly: v.witness.poly.to_string(),
                irreducible: v.witness.irreducible,
                in_family: v.witness.in_family,
            },
            verdict: VerdictDto {
                closed: v.verdict.closed,
                trivial_empty: v.verdict.trivial_empty,
                violations: v.verdict.violations.iter().map(ViolationDto::from).collect(),
                unverifiable: v
                    .verdict
                    .unverifiable
                    .iter()
                    .map(|m| m.to_string())
                    .collect(),
                nontrivial_witness: v
                    .verdict
                    .nontrivial_witness
                    .as_ref()
                    .map(|w| w.to_string()),
                infinite_certificate: v.verdict.infinite_certificate.map(|c| c.tag()),
            },
            passed: v.passed,
            config,
        }
    }
}

fn render_level_line(l: &LevelReport) -> String {
    let mut line = format!(
        "level {}_{}: {} | degree {} | {} | {}",
        l.kind.label(),
        l.level,
        l.poly,
        l.degree,
        if l.monic { "monic" } else { "NOT MONIC" },
        if l.irreducible { "irreducible" } else { "REDUCIBLE" },
    );
    match &l.criterion {
        Some(c) => line.push_str(&format!(
            " | order {} | criterion(t={}) {}",
            c.order,
            c.t,
            if c.passed { "pass" } else { "FAIL" },
        )),
        None => line.push_str(" | order - | criterion -"),
    }
    line.push_str(&format!(
        " | shift-identity {}",
        if l.shift_identity { "pass" } else { "FAIL" },
    ));
    line
}

pub fn render_verify_text(v: &FamilyVerification) -> String {
    let mut out = String::new();
    out.push_str(&format!("p: {}\n", v.p));
    out.push_str(&format!("gate: pass ({} mod 9 = {})\n", v.p, v.p % 9));
    out.push_str(&format!("max level: {}\n", v.max_level));
    for level in &v.levels {
        out.push_str(&render_level_line(level));
        out.push('\n');
    }
    out.push_str(&format!("members ({}):\n", v.members.len()));
    for m in &v.members {
        out.push_str(&format!("  {}[{}] {}\n", m.kind.label(), m.index, m.poly));
    }
    out.push_str(&format!(
        "closed: {}\n",
        if v.verdict.closed { "yes" } else { "NO" }
    ));
    out.push_str(&format!(
        "witness: {} | {} | {}\n",
        v.witness.poly,
        if v.witness.irreducible {
            "irreducible"
        } else {
            "REDUCIBLE"
        },
        if v.witness.in_family {
            "IN FAMILY"
        } else {
            "outside the family"
        },
    ));
    if let Some(cert) = v.verdict.infinite_certificate {
        out.push_str(&format!("certificate: {}\n", cert.tag()));
    }
    out.push_str(&format!(
        "verdict: {}\n",
        if v.passed { "PASS" } else { "FAIL" }
    ));
    out
}

// ---------------------------------------------------------------------
// probe

#[derive(Serialize)]
pub struct ProbeLevelDto {
    pub level: u32,
    pub poly: String,
    pub degree: usize,
    pub irreducible: bool,
    /// Decimal; absent when the level is reducible or the order was out
    /// of budget.
    pub order: Option<String>,
    pub criterion: Option<CriterionDto>,
    pub closure_status: &'static str,
    pub escaped: Vec<String>,
    pub accumulated: usize,
    pub passed: bool,
}

impl From<&ProbeLevel> for ProbeLevelDto {
    fn from(l: &ProbeLevel) -> Self {
        ProbeLevelDto {
            level: l.level,
            poly: l.poly.to_string(),
            degree: l.degree,
            irreducible: l.irreducible,
            order: l.order.as_ref().map(|o| o.to_string()),
            criterion: l.criterion.as_ref().map(CriterionDto::from),
            closure_status: l.closure_status.tag(),
            escaped: l.escaped.iter().map(|e| e.to_string()).collect(),
            accumulated: l.accumulated,
            passed: l.passed,
        }
    }
}

#[derive(Serialize)]
pub struct ProbeReportDto {
    pub p: u64,
    pub base: String,
    pub t: u64,
    pub max_level: u32,
    pub levels: Vec<ProbeLevelDto>,
    pub self_sustaining: bool,
    pub config: ConfigEcho,
}

impl ProbeReportDto {
    pub fn new(r: &ProbeReport, config: ConfigEcho) -> Self {
        ProbeReportDto {
            p: r.p,
            base: r.base.to_string(),
            t: r.t,
            max_level: r.max_level,
            levels: r.levels.iter().map(ProbeLevelDto::from).collect(),
            self_sustaining: r.self_sustaining,
            config,
        }
    }
}

pub fn render_probe_text(r: &ProbeReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("p: {}\n", r.p));
    out.push_str(&format!("base: {}\n", r.base));
    out.push_str(&format!("t: {}\n", r.t));
    for l in &r.levels {
        let mut line = format!(
            "level {}: {} | degree {} | {}",
            l.level,
            l.poly,
            l.degree,
            if l.irreducible {
                "irreducible"
            } else {
                "REDUCIBLE"
            },
        );
        match &l.order {
            Some(o) => line.push_str(&format!(" | order {o}")),
            None => line.push_str(" | order -"),
        }
        match &l.criterion {
            Some(c) => line.push_str(&format!(
                " | criterion(t={}) {}",
                c.t,
                if c.passed { "pass" } else { "FAIL" },
            )),
            None => line.push_str(" | criterion -"),
        }
        line.push_str(&format!(
            " | closure {} | members {}",
            l.closure_status.tag(),
            l.accumulated,
        ));
        if !l.escaped.is_empty() {
            let list: Vec<String> = l.escaped.iter().map(|e| e.to_string()).collect();
            line.push_str(&format!(" | escaped: {}", list.join(", ")));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&format!(
        "verdict: {}\n",
        if r.self_sustaining {
            "SELF-SUSTAINING"
        } else {
            "NOT SELF-SUSTAINING"
        },
    ));
    out
}
