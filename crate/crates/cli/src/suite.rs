//! Named checks over a corpus.
//!
//! Each check produces one line `<check-id> <instance> <pass|fail> [witness...]`.
//! Instance checks run per corpus file and skip files they do not apply to;
//! corpus checks run once over the whole corpus.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use smorph_core::engine::generated_congruence_traced;
use smorph_core::oracle::{oracle_generated, oracle_lattice, ORACLE_LIMIT};
use smorph_core::residuated::{
    bl_signature, check_axioms, classify_trichotomy, congruence_to_filter, diagonal_pair, enumerate_state_operators,
    filter_to_congruence, filters, mv_skeleton_algebra, radical_square, si_state_bl_report, tau_h, AlgebraClass,
    FilterMode, ResiduatedView, TrichotomyCase,
};
use smorph_core::state::{si_transfer_check, subdiagonal_embedding, verify_state_morphism, StateMorphismViolation};
use smorph_core::theory::generator_spot_check;
use smorph_core::tnorm::{validate_nat_norm, GroupoidClass, GroupoidTable};
use smorph_core::{
    cep_extension, congruence_lattice, diagonal, enumerate_morphisms, find_isomorphism, generated_congruence,
    monolith, principal_congruence, Caps, Congruence, Error, FiniteAlgebra, Morphism, MorphismMode,
    StateMorphismAlgebra,
};

use crate::corpus::Instance;

/// Bases up to this size are paired with all their idempotent endomorphisms.
pub const STATE_LIMIT: usize = 6;
/// Residuated instances up to this size get the BL-specific suites.
pub const BL_LIMIT: usize = 8;
/// `D(B)` is checked for SI bases up to this size.
pub const DIAGONAL_LIMIT: usize = 4;
/// Chains up to this size are combined by the τ_h construction.
pub const TAU_H_LIMIT: usize = 4;

/// Instance name used by corpus-wide checks.
pub const CORPUS: &str = "corpus";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    CapExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check: &'static str,
    pub instance: String,
    pub status: Status,
    /// `key=value` tokens: counts on a pass, the counterexample on a fail.
    pub detail: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The value of a `key=value` detail token.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.detail
            .iter()
            .find_map(|t| t.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "fail" };
        write!(f, "{} {} {}", self.check, self.instance, status)?;
        if self.status == Status::CapExceeded {
            f.write_str(" cap-exceeded")?;
        }
        for t in &self.detail {
            write!(f, " {t}")?;
        }
        Ok(())
    }
}

struct Outcome {
    pass: bool,
    detail: Vec<String>,
}

fn pass(detail: Vec<String>) -> Outcome {
    Outcome { pass: true, detail }
}

fn fail(detail: Vec<String>) -> Outcome {
    Outcome { pass: false, detail }
}

type Verdict = smorph_core::Result<Outcome>;

pub fn list(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Blocks separated by `|`, e.g. `0,1|2`.
pub fn blocks(c: &Congruence) -> String {
    c.blocks().iter().map(|b| list(b)).collect::<Vec<_>>().join("|")
}

fn tau_token(tau: &[usize]) -> String {
    format!("tau={}", list(tau))
}

/// Everything a check may need about one instance, computed once.
pub struct Prepared<'a> {
    pub instance: &'a Instance,
    pub caps: Caps,
    /// BL signature and the BL axioms hold.
    pub bl: bool,
    /// The file's tau row as a state-morphism algebra, when it is one.
    pub state: Option<StateMorphismAlgebra>,
    /// The base with each of its idempotent endomorphisms, for bases up to
    /// [`BL_LIMIT`].
    pub endos: Vec<StateMorphismAlgebra>,
}

impl<'a> Prepared<'a> {
    pub fn new(instance: &'a Instance, caps: Caps) -> Self {
        let alg = &instance.doc.algebra;
        let bl = alg.signature() == &bl_signature()
            && check_axioms(alg, AlgebraClass::Bl).is_ok_and(|v| v.holds());
        let state = instance
            .doc
            .state_morphism()
            .and_then(|r| r.ok())
            .filter(|s| verify_state_morphism(s.base(), s.tau()).is_ok_and(|v| v.is_none()));
        let endos = if alg.size() <= BL_LIMIT {
            enumerate_morphisms(alg, alg, MorphismMode::IdempotentEndomorphisms)
                .unwrap_or_default()
                .into_iter()
                .filter_map(|m| StateMorphismAlgebra::new(alg.clone(), m.into_map()).ok())
                .collect()
        } else {
            Vec::new()
        };
        Prepared {
            instance,
            caps,
            bl,
            state,
            endos,
        }
    }

    fn alg(&self) -> &FiniteAlgebra {
        &self.instance.doc.algebra
    }

    fn view(&self) -> ResiduatedView<'_> {
        ResiduatedView::new(self.alg()).expect("bl signature checked")
    }

    /// The idempotent endomorphisms, plus the file's own tau when the base
    /// was too large to enumerate.
    fn state_algebras(&self) -> Vec<&StateMorphismAlgebra> {
        let mut out: Vec<&StateMorphismAlgebra> = self.endos.iter().collect();
        if let Some(s) = &self.state {
            if !self.endos.iter().any(|e| e.tau() == s.tau()) {
                out.push(s);
            }
        }
        out
    }
}

type InstanceCheck = fn(&Prepared<'_>) -> Option<Verdict>;
type CorpusCheck = fn(&[Instance], &Caps) -> Verdict;

/// Per-instance checks, in report order.
const INSTANCE_CHECKS: &[(&str, InstanceCheck)] = &[
    ("axioms", axioms),
    ("nat-norm", nat_norm),
    ("state-morphism", state_morphism),
    ("congruence-oracle", congruence_oracle),
    ("malcev-replay", malcev_replay),
    ("monolith-containment", monolith_containment),
    ("join-laws", join_laws),
    ("filter-congruence", filter_congruence),
    ("mv-skeleton", mv_skeleton),
    ("lift-congruence", lift_congruence),
    ("kernel-compatibility", kernel_compatibility),
    ("image-generation", image_generation),
    ("faithful-lift", faithful_lift),
    ("subdiagonal-embedding", subdiagonal),
    ("si-transfer", si_transfer),
    ("diagonal-si", diagonal_si),
    ("state-si-characterization", state_si_characterization),
    ("trichotomy", trichotomy),
    ("cep", cep),
];

/// Corpus-wide checks, reported after the instance checks.
const CORPUS_CHECKS: &[(&str, CorpusCheck)] = &[
    ("swap-isomorphism", swap_isomorphism),
    ("tau-h-recovery", tau_h_recovery),
    ("radical-square", radical_square_case),
    ("generator-spot-check", generator),
];

pub fn check_ids() -> impl Iterator<Item = &'static str> {
    INSTANCE_CHECKS
        .iter()
        .map(|c| c.0)
        .chain(CORPUS_CHECKS.iter().map(|c| c.0))
}

fn finish(check: &'static str, instance: &str, verdict: Verdict) -> CheckResult {
    let (status, detail) = match verdict {
        Ok(o) if o.pass => (Status::Pass, o.detail),
        Ok(o) => (Status::Fail, o.detail),
        Err(Error::CapExceeded { what, size, cap }) => (
            Status::CapExceeded,
            vec![format!("what={}", what.replace(' ', "-")), format!("size={size}"), format!("cap={cap}")],
        ),
        Err(e) => (Status::Fail, vec![format!("error={}", e.to_string().replace(' ', "_"))]),
    };
    CheckResult {
        check,
        instance: instance.to_string(),
        status,
        detail,
    }
}

fn selected(only: Option<&[String]>, id: &str) -> bool {
    only.is_none_or(|ids| ids.iter().any(|i| i == id))
}

pub fn run_instance(instance: &Instance, caps: &Caps, only: Option<&[String]>) -> Vec<CheckResult> {
    let p = Prepared::new(instance, *caps);
    INSTANCE_CHECKS
        .iter()
        .filter(|(id, _)| selected(only, id))
        .filter_map(|&(id, check)| check(&p).map(|v| finish(id, &instance.name, v)))
        .collect()
}

pub fn run_corpus_check(id: &str, corpus: &[Instance], caps: &Caps) -> Option<CheckResult> {
    CORPUS_CHECKS
        .iter()
        .find(|c| c.0 == id)
        .map(|&(id, check)| finish(id, CORPUS, check(corpus, caps)))
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub caps: Caps,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    /// Restrict to these check ids.
    pub only: Option<Vec<String>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            caps: Caps::default(),
            jobs: 0,
            only: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub instances: usize,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    /// 0 when everything passes, 1 on a failed check, 3 when the only
    /// problems are exceeded caps.
    pub fn exit_code(&self) -> i32 {
        if self.failures().next().is_some() {
            1
        } else if self.results.iter().any(|r| r.status == Status::CapExceeded) {
            3
        } else {
            0
        }
    }
}

/// Runs every selected check. Results are ordered by instance name, then by
/// check, whatever the thread count.
pub fn run_verify_suite(corpus: &[Instance], config: &SuiteConfig) -> SuiteReport {
    if corpus.is_empty() {
        return SuiteReport {
            instances: 0,
            results: Vec::new(),
        };
    }
    let only = config.only.as_deref();
    let work = || {
        let per_instance: Vec<Vec<CheckResult>> = corpus
            .par_iter()
            .map(|inst| run_instance(inst, &config.caps, only))
            .collect();
        let global: Vec<CheckResult> = CORPUS_CHECKS
            .par_iter()
            .filter(|(id, _)| selected(only, id))
            .map(|&(id, check)| finish(id, CORPUS, check(corpus, &config.caps)))
            .collect();
        per_instance.into_iter().flatten().chain(global).collect()
    };
    let results = match rayon::ThreadPoolBuilder::new().num_threads(config.jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    SuiteReport {
        instances: corpus.len(),
        results,
    }
}

// ---- instance checks ----

fn axioms(p: &Prepared<'_>) -> Option<Verdict> {
    let class = p.instance.doc.declared()?;
    Some(check_axioms(p.alg(), class).map(|v| match v.violation {
        None => pass(vec![format!("class={class}")]),
        Some(viol) => fail(vec![
            format!("class={class}"),
            format!("axiom={}", viol.axiom),
            format!("args={}", list(&viol.witness)),
        ]),
    }))
}

fn nat_norm(p: &Prepared<'_>) -> Option<Verdict> {
    if p.instance.doc.declared()? != AlgebraClass::NaBl {
        return None;
    }
    let alg = p.alg();
    let run = || -> Verdict {
        let mul = alg.op("mul").ok_or(Error::WrongSignature {
            expected: "a binary mul",
        })?;
        let table = GroupoidTable::new(alg.size(), alg.table(mul).to_vec(), GroupoidClass::NatNorm)?;
        let v = validate_nat_norm(&table)?;
        if v.passes() {
            return Ok(pass(vec![format!("continuity={}", v.continuity.replace(' ', "-"))]));
        }
        let mut d = Vec::new();
        if let Some((x, y)) = v.commutativity {
            d.push(format!("commutativity={x},{y}"));
        }
        if let Some(x) = v.neutral_top {
            d.push(format!("neutral-top={x}"));
        }
        if let Some((x, y, z)) = v.monotonicity {
            d.push(format!("monotonicity={x},{y},{z}"));
        }
        if let Some(w) = v.adjointness_failure {
            d.push(format!("adjointness={}", list(&w)));
        }
        if let Some(viol) = v.nabl.and_then(|n| n.violation) {
            d.push(format!("axiom={}", viol.axiom));
            d.push(format!("args={}", list(&viol.witness)));
        }
        Ok(fail(d))
    };
    Some(run())
}

fn state_morphism(p: &Prepared<'_>) -> Option<Verdict> {
    let tau = p.instance.doc.tau.as_ref()?;
    Some(verify_state_morphism(p.alg(), tau).map(|v| match v {
        None => pass(vec![tau_token(tau)]),
        Some(StateMorphismViolation::Homomorphism { symbol, args }) => fail(vec![
            "violation=homomorphism".into(),
            format!("symbol={symbol}"),
            format!("args={}", list(&args)),
        ]),
        Some(StateMorphismViolation::Idempotence { element }) => {
            fail(vec!["violation=idempotence".into(), format!("element={element}")])
        }
    }))
}

/// The base, and the τ-expansion when the file has a state-morphism.
fn algebras_to_compare<'p>(p: &'p Prepared<'_>) -> Vec<(&'static str, &'p FiniteAlgebra)> {
    let mut out = vec![("base", p.alg())];
    if let Some(s) = &p.state {
        out.push(("expansion", s.expansion()));
    }
    out
}

fn congruence_oracle(p: &Prepared<'_>) -> Option<Verdict> {
    let n = p.alg().size();
    if n > ORACLE_LIMIT {
        return None;
    }
    let run = || -> Verdict {
        let mut compared = 0usize;
        for (which, alg) in algebras_to_compare(p) {
            let fast = congruence_lattice(alg, &p.caps)?;
            if fast != oracle_lattice(alg)? {
                return Ok(fail(vec![format!("algebra={which}"), "lattice=differs".into()]));
            }
            let mut seeds: Vec<Vec<(usize, usize)>> = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    seeds.push(vec![(a, b)]);
                }
            }
            for x in 1..n {
                for y in 0..n.saturating_sub(1) {
                    seeds.push(vec![(0, x), (y, n - 1)]);
                }
            }
            for pairs in seeds {
                compared += 1;
                if generated_congruence(alg, &pairs)? != oracle_generated(alg, &pairs)? {
                    let ps: Vec<String> = pairs.iter().map(|(a, b)| format!("{a},{b}")).collect();
                    return Ok(fail(vec![format!("algebra={which}"), format!("pairs={}", ps.join(";"))]));
                }
            }
        }
        Ok(pass(vec![format!("generated={compared}")]))
    };
    Some(run())
}

fn malcev_replay(p: &Prepared<'_>) -> Option<Verdict> {
    let n = p.alg().size();
    if n > BL_LIMIT {
        return None;
    }
    let run = || -> Verdict {
        let mut samples = 0usize;
        for (which, alg) in algebras_to_compare(p) {
            let mut seeds: Vec<Vec<(usize, usize)>> = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    seeds.push(vec![(a, b)]);
                }
            }
            if n >= 3 {
                seeds.push(vec![(0, 1), (n - 2, n - 1)]);
            }
            for pairs in seeds {
                let traced = generated_congruence_traced(alg, &pairs)?;
                for (c, d) in traced.congruence().pairs() {
                    samples += 1;
                    let w = traced.witness(alg, c, d)?;
                    if let Err(e) = w.replay(alg, &pairs) {
                        return Ok(fail(vec![
                            format!("algebra={which}"),
                            format!("target={c},{d}"),
                            format!("error={}", e.to_string().replace(' ', "_")),
                        ]));
                    }
                }
            }
        }
        Ok(pass(vec![format!("samples={samples}")]))
    };
    Some(run())
}

fn monolith_containment(p: &Prepared<'_>) -> Option<Verdict> {
    let run = || -> Verdict {
        for (which, alg) in algebras_to_compare(p) {
            let lattice = congruence_lattice(alg, &p.caps)?;
            match monolith(alg)? {
                Some(m) => {
                    if !lattice.contains(&m) {
                        return Ok(fail(vec![format!("algebra={which}"), format!("monolith={}", blocks(&m))]));
                    }
                    if let Some(t) = lattice.iter().find(|t| !t.is_identity() && !m.le(t)) {
                        return Ok(fail(vec![
                            format!("algebra={which}"),
                            format!("monolith={}", blocks(&m)),
                            format!("not-below={}", blocks(t)),
                        ]));
                    }
                }
                None if alg.size() > 1 => {
                    let meet = lattice
                        .iter()
                        .filter(|t| !t.is_identity())
                        .fold(Congruence::total(alg.size()), |acc, t| acc.meet(t));
                    if !meet.is_identity() {
                        return Ok(fail(vec![format!("algebra={which}"), format!("missed={}", blocks(&meet))]));
                    }
                }
                None => {}
            }
        }
        Ok(pass(Vec::new()))
    };
    Some(run())
}

fn join_laws(p: &Prepared<'_>) -> Option<Verdict> {
    let run = || -> Verdict {
        let lattice = congruence_lattice(p.alg(), &p.caps)?;
        let n = p.alg().size();
        let delta = Congruence::identity(n);
        let nabla = Congruence::total(n);
        let bad = |law: &str, x: &Congruence| Ok(fail(vec![format!("law={law}"), format!("theta={}", blocks(x))]));
        if lattice.first() != Some(&delta) || !lattice.contains(&nabla) {
            return bad("bounds", &delta);
        }
        for x in &lattice {
            if x.join(&delta) != *x || x.join(x) != *x || x.join(&nabla) != nabla {
                return bad("unit-idempotent", x);
            }
            for y in &lattice {
                let xy = x.join(y);
                if xy != y.join(x) {
                    return bad("commutative", x);
                }
                if !lattice.contains(&xy) || !lattice.contains(&x.meet(y)) {
                    return bad("closed", x);
                }
                for z in &lattice {
                    if xy.join(z) != x.join(&y.join(z)) {
                        return bad("associative", x);
                    }
                }
            }
        }
        Ok(pass(vec![format!("congruences={}", lattice.len())]))
    };
    Some(run())
}

fn filter_congruence(p: &Prepared<'_>) -> Option<Verdict> {
    if !p.bl {
        return None;
    }
    let run = || -> Verdict {
        let v = p.view();
        let all = filters(&v, FilterMode::All);
        let lattice = congruence_lattice(p.alg(), &p.caps)?;
        if all.len() != lattice.len() {
            return Ok(fail(vec![format!("filters={}", all.len()), format!("congruences={}", lattice.len())]));
        }
        for f in &all {
            let theta = filter_to_congruence(&v, f)?;
            if congruence_to_filter(&v, &theta)? != *f {
                return Ok(fail(vec![format!("filter={}", list(f.members()))]));
            }
        }
        for theta in &lattice {
            let f = congruence_to_filter(&v, theta)?;
            if filter_to_congruence(&v, &f)? != *theta {
                return Ok(fail(vec![format!("theta={}", blocks(theta))]));
            }
        }
        let mut d = vec![format!("filters={}", all.len())];
        for s in p.state_algebras() {
            let tau_filters = filters(&v, FilterMode::Tau(s.tau())).len();
            let con = s.con_sma(&p.caps)?.len();
            if tau_filters != con {
                return Ok(fail(vec![
                    tau_token(s.tau()),
                    format!("tau-filters={tau_filters}"),
                    format!("congruences={con}"),
                ]));
            }
        }
        d.push(format!("states={}", p.state_algebras().len()));
        Ok(pass(d))
    };
    Some(run())
}

fn mv_skeleton(p: &Prepared<'_>) -> Option<Verdict> {
    if !p.bl {
        return None;
    }
    let run = || -> Verdict {
        let (skeleton, elements) = mv_skeleton_algebra(&p.view())?;
        let v = check_axioms(&skeleton, AlgebraClass::Mv)?;
        Ok(match v.violation {
            None => pass(vec![format!("elements={}", list(&elements))]),
            Some(viol) => fail(vec![format!("axiom={}", viol.axiom), format!("args={}", list(&viol.witness))]),
        })
    };
    Some(run())
}

/// The state algebras of a small base, for the lemma suites.
fn small_states<'p>(p: &'p Prepared<'_>) -> Option<Vec<&'p StateMorphismAlgebra>> {
    (p.alg().size() <= STATE_LIMIT).then(|| p.state_algebras())
}

/// Runs `each` on every small state algebra, stopping at the first failure.
fn over_states(
    p: &Prepared<'_>,
    mut each: impl FnMut(&StateMorphismAlgebra) -> smorph_core::Result<Option<Vec<String>>>,
) -> Option<Verdict> {
    let states = small_states(p)?;
    let mut run = || -> Verdict {
        for s in &states {
            if let Some(mut w) = each(s)? {
                w.insert(0, tau_token(s.tau()));
                return Ok(fail(w));
            }
        }
        Ok(pass(vec![format!("states={}", states.len())]))
    };
    Some(run())
}

/// Image pairs of a congruence on the image subalgebra, in base elements.
fn image_pairs(s: &StateMorphismAlgebra, phi: &Congruence) -> Vec<(usize, usize)> {
    let image = s.image();
    phi.spanning_pairs().into_iter().map(|(a, b)| (image[a], image[b])).collect()
}

fn lift_congruence(p: &Prepared<'_>) -> Option<Verdict> {
    let caps = p.caps;
    over_states(p, |s| {
        let (image_alg, _) = s.image_algebra()?;
        let image = s.image();
        for phi in congruence_lattice(&image_alg, &caps)? {
            let theta = match s.lift_congruence(&phi) {
                Ok(t) => t,
                Err(_) => return Ok(Some(vec![format!("phi={}", blocks(&phi)), "lift=not-compatible".into()])),
            };
            if theta.restrict(&image) != phi {
                return Ok(Some(vec![format!("phi={}", blocks(&phi)), "restriction=differs".into()]));
            }
            let generated = s.generated_congruence_tau(&image_pairs(s, &phi))?;
            if !generated.le(&theta) {
                return Ok(Some(vec![format!("phi={}", blocks(&phi)), format!("generated={}", blocks(&generated))]));
            }
        }
        Ok(None)
    })
}

fn kernel_compatibility(p: &Prepared<'_>) -> Option<Verdict> {
    let caps = p.caps;
    over_states(p, |s| {
        let theta_tau = s.theta_tau();
        for theta in congruence_lattice(s.base(), &caps)? {
            if theta.le(&theta_tau) && !s.expansion().is_compatible(&theta) {
                return Ok(Some(vec![format!("theta={}", blocks(&theta))]));
            }
        }
        for (x, y) in theta_tau.pairs() {
            let base = principal_congruence(s.base(), x, y)?;
            let expanded = s.generated_congruence_tau(&[(x, y)])?;
            if base != expanded {
                return Ok(Some(vec![format!("pair={x},{y}"), format!("base={}", blocks(&base))]));
            }
        }
        Ok(None)
    })
}

fn image_generation(p: &Prepared<'_>) -> Option<Verdict> {
    let caps = p.caps;
    over_states(p, |s| {
        let (image_alg, _) = s.image_algebra()?;
        let image = s.image();
        let mut seeds: Vec<Vec<(usize, usize)>> = congruence_lattice(&image_alg, &caps)?
            .iter()
            .map(|phi| image_pairs(s, phi))
            .collect();
        for (i, &a) in image.iter().enumerate() {
            for &b in &image[i + 1..] {
                seeds.push(vec![(a, b)]);
            }
        }
        for pairs in seeds {
            let base = generated_congruence(s.base(), &pairs)?;
            if base != s.generated_congruence_tau(&pairs)? {
                let ps: Vec<String> = pairs.iter().map(|(a, b)| format!("{a},{b}")).collect();
                return Ok(Some(vec![format!("pairs={}", ps.join(";"))]));
            }
        }
        Ok(None)
    })
}

fn faithful_lift(p: &Prepared<'_>) -> Option<Verdict> {
    over_states(p, |s| {
        let k = s.image().len();
        let lifted_delta = s.lift_congruence(&Congruence::identity(k))?;
        if lifted_delta.is_identity() != s.is_faithful() {
            return Ok(Some(vec![format!("lift={}", blocks(&lifted_delta))]));
        }
        Ok(None)
    })
}

fn subdiagonal(p: &Prepared<'_>) -> Option<Verdict> {
    let caps = p.caps;
    let mut si = 0;
    let v = over_states(p, |s| {
        if !s.is_subdirectly_irreducible()? {
            return Ok(None);
        }
        si += 1;
        let cert = subdiagonal_embedding(s, &caps)?;
        let c = cert.checks;
        if c.all() {
            return Ok(None);
        }
        Ok(Some(vec![
            format!("embedding={}", list(cert.embedding.map())),
            format!("injective={}", c.injective),
            format!("homomorphic={}", c.homomorphic),
            format!("tau-commuting={}", c.tau_commuting),
            format!("target-si={}", c.target_si),
        ]))
    });
    v.map(|r| {
        r.map(|mut o| {
            if o.pass {
                o.detail.push(format!("si={si}"));
            }
            o
        })
    })
}

fn si_transfer(p: &Prepared<'_>) -> Option<Verdict> {
    let alg = p.alg();
    if alg.size() > STATE_LIMIT {
        return None;
    }
    let run = || -> Verdict {
        if monolith(alg)?.is_none() {
            return Ok(pass(vec!["base-si=false".into()]));
        }
        let report = si_transfer_check(alg)?;
        Ok(match report.entries.iter().find(|e| e.monolith.is_none()) {
            None => pass(vec![format!("states={}", report.entries.len())]),
            Some(e) => fail(vec![tau_token(&e.tau)]),
        })
    };
    Some(run())
}

fn diagonal_si(p: &Prepared<'_>) -> Option<Verdict> {
    let alg = p.alg();
    if alg.size() > DIAGONAL_LIMIT {
        return None;
    }
    let run = || -> Verdict {
        if monolith(alg)?.is_none() {
            return Ok(pass(vec!["base-si=false".into()]));
        }
        let d = diagonal(alg);
        Ok(if d.is_subdirectly_irreducible()? {
            pass(vec![format!("size={}", d.size())])
        } else {
            fail(vec!["diagonal-si=false".into()])
        })
    };
    Some(run())
}

fn state_si_characterization(p: &Prepared<'_>) -> Option<Verdict> {
    if !p.bl || p.alg().size() > BL_LIMIT {
        return None;
    }
    let run = || -> Verdict {
        let v = p.view();
        let mut operators = enumerate_state_operators(&v);
        if let Some(t) = &p.instance.doc.tau {
            if !operators.contains(t) && smorph_core::residuated::check_state_operator(&v, t)?.is_state_operator() {
                operators.push(t.clone());
            }
        }
        let mut si = 0;
        for tau in &operators {
            let r = si_state_bl_report(&v, tau)?;
            if !r.agrees() {
                return Ok(fail(vec![
                    tau_token(tau),
                    format!("condition-image={}", r.condition_image),
                    format!("condition-kernel={}", r.condition_kernel),
                    format!("condition-disjunction={}", r.condition_disjunction),
                    format!("monolith={}", r.monolith.is_some()),
                ]));
            }
            if r.is_si() {
                si += 1;
                if !r.image_linear || !r.kernel_linear {
                    return Ok(fail(vec![
                        tau_token(tau),
                        format!("image-linear={}", r.image_linear),
                        format!("kernel-linear={}", r.kernel_linear),
                    ]));
                }
            }
        }
        Ok(pass(vec![format!("operators={}", operators.len()), format!("si={si}")]))
    };
    Some(run())
}

fn trichotomy(p: &Prepared<'_>) -> Option<Verdict> {
    if !p.bl || p.alg().size() > BL_LIMIT {
        return None;
    }
    let run = || -> Verdict {
        let v = p.view();
        let mut tags: BTreeMap<&'static str, usize> = BTreeMap::new();
        for s in p.state_algebras() {
            let r = classify_trichotomy(s)?;
            let si = s.is_subdirectly_irreducible()?;
            let has_boolean = smorph_core::residuated::boolean_elements(&v).len() > 2;
            let expected = if !si {
                TrichotomyCase::NotSi
            } else if s.is_faithful() {
                TrichotomyCase::Identity
            } else if has_boolean {
                TrichotomyCase::Product
            } else {
                TrichotomyCase::Local
            };
            if r.case != expected || !r.side_conditions_hold() {
                let mut w = vec![tau_token(s.tau()), format!("case={}", r.case), format!("expected={expected}")];
                w.extend(
                    r.side_conditions
                        .iter()
                        .filter(|c| !c.1)
                        .map(|c| format!("failed={}", c.0)),
                );
                return Ok(fail(w));
            }
            *tags.entry(r.case.tag()).or_default() += 1;
        }
        let summary: Vec<String> = tags.iter().map(|(t, c)| format!("{t}:{c}")).collect();
        Ok(pass(vec![format!("tags={}", summary.join(","))]))
    };
    Some(run())
}

/// Every subuniverse, found by generating from every subset.
fn subuniverses(alg: &FiniteAlgebra) -> smorph_core::Result<Vec<Vec<usize>>> {
    let n = alg.size();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..1 << n {
        let gens: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        let set = alg.subuniverse_generated(&gens)?;
        if !out.contains(&set) {
            out.push(set);
        }
    }
    out.sort();
    Ok(out)
}

fn cep(p: &Prepared<'_>) -> Option<Verdict> {
    if !p.bl || p.alg().size() > BL_LIMIT {
        return None;
    }
    let run = || -> Verdict {
        let alg = p.alg();
        let mut checked = 0usize;
        for set in subuniverses(alg)? {
            let (sub, incl) = alg.subalgebra(&set)?;
            for theta in congruence_lattice(&sub, &p.caps)? {
                checked += 1;
                if cep_extension(alg, &sub, &incl, &theta, &p.caps)?.is_none() {
                    return Ok(fail(vec![format!("subalgebra={}", list(&set)), format!("theta={}", blocks(&theta))]));
                }
            }
        }
        let mut tau_checked = 0usize;
        for s in p.state_algebras() {
            for set in subuniverses(s.expansion())? {
                let (sub, incl) = s.expansion().subalgebra(&set)?;
                for theta in congruence_lattice(&sub, &p.caps)? {
                    tau_checked += 1;
                    let pairs: Vec<(usize, usize)> = theta
                        .spanning_pairs()
                        .into_iter()
                        .map(|(a, b)| (incl.apply(a), incl.apply(b)))
                        .collect();
                    let base = generated_congruence(alg, &pairs)?;
                    let compatible = s.expansion().is_compatible(&base);
                    if !compatible || base != s.generated_congruence_tau(&pairs)? || base.restrict(&set) != theta {
                        return Ok(fail(vec![
                            tau_token(s.tau()),
                            format!("subalgebra={}", list(&set)),
                            format!("theta={}", blocks(&theta)),
                            format!("tau-compatible={compatible}"),
                        ]));
                    }
                }
            }
        }
        Ok(pass(vec![format!("extensions={checked}"), format!("tau-extensions={tau_checked}")]))
    };
    Some(run())
}

// ---- corpus checks ----

/// Residuated instances that are BL chains of at most `max` elements.
fn bl_chains(corpus: &[Instance], max: usize) -> Vec<&Instance> {
    corpus
        .iter()
        .filter(|i| i.doc.tau.is_none() && i.doc.algebra.size() <= max)
        .filter(|i| {
            let alg = &i.doc.algebra;
            alg.signature() == &bl_signature()
                && check_axioms(alg, AlgebraClass::Bl).is_ok_and(|v| v.holds())
                && ResiduatedView::new(alg).is_ok_and(|v| v.is_linear())
        })
        .collect()
}

fn swap_isomorphism(corpus: &[Instance], _caps: &Caps) -> Verdict {
    let mut checked = 0;
    for inst in bl_chains(corpus, DIAGONAL_LIMIT) {
        let pair = diagonal_pair(&inst.doc.algebra)?;
        let t1 = classify_trichotomy(&pair.first)?.case;
        let t2 = classify_trichotomy(&pair.second)?.case;
        if !pair.swap_is_isomorphism || t1 != t2 {
            return Ok(fail(vec![format!("instance={}", inst.name), format!("cases={t1},{t2}")]));
        }
        checked += 1;
    }
    Ok(if checked > 0 {
        pass(vec![format!("algebras={checked}")])
    } else {
        fail(vec!["algebras=0".into()])
    })
}

/// Some pair of isomorphisms `α: A → A'`, `β: B → B'` with `h' ∘ α = β ∘ h`.
fn recovers(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    h: &Morphism,
    a2: &FiniteAlgebra,
    b2: &FiniteAlgebra,
    h2: &Morphism,
) -> smorph_core::Result<bool> {
    if a.size() != a2.size() || b.size() != b2.size() || find_isomorphism(a, a2)?.is_none() {
        return Ok(false);
    }
    let alphas = enumerate_morphisms(a, a2, MorphismMode::Embeddings)?;
    let betas = enumerate_morphisms(b, b2, MorphismMode::Embeddings)?;
    Ok(alphas.iter().any(|al| {
        betas
            .iter()
            .any(|be| (0..a.size()).all(|x| h2.apply(al.apply(x)) == be.apply(h.apply(x))))
    }))
}

fn tau_h_recovery(corpus: &[Instance], _caps: &Caps) -> Verdict {
    let chains: Vec<&Instance> = bl_chains(corpus, TAU_H_LIMIT)
        .into_iter()
        .filter(|i| i.doc.algebra.size() >= 2)
        .collect();
    let (mut si, mut not_si) = (0, 0);
    for a in &chains {
        for b in &chains {
            let (aa, bb) = (&a.doc.algebra, &b.doc.algebra);
            for h in enumerate_morphisms(aa, bb, MorphismMode::All)? {
                let inst = tau_h(aa, bb, h.map())?;
                let r = classify_trichotomy(&inst.algebra)?;
                let witness = |what: &str| {
                    Ok(fail(vec![
                        format!("a={}", a.name),
                        format!("b={}", b.name),
                        format!("h={}", list(h.map())),
                        format!("problem={what}"),
                    ]))
                };
                let is_si = inst.algebra.is_subdirectly_irreducible()?;
                if is_si != h.is_injective() || is_si != inst.kernel_h_trivial() {
                    return witness("si-vs-injective");
                }
                if !is_si {
                    not_si += 1;
                    if r.case != TrichotomyCase::NotSi {
                        return witness("case");
                    }
                    continue;
                }
                si += 1;
                if r.case != TrichotomyCase::Product || !r.side_conditions_hold() {
                    return witness("case");
                }
                if inst.least_tau_filter.as_ref().map(|f| f.members().to_vec()) != inst.expected_least_filter {
                    return witness("least-filter");
                }
                let d = r.decomposition.as_ref().expect("case iii has a decomposition");
                if !recovers(aa, bb, &h, &d.a, &d.b, &d.h)? {
                    return witness("recovery");
                }
            }
        }
    }
    Ok(if si > 0 && not_si > 0 {
        pass(vec![format!("si={si}"), format!("not-si={not_si}")])
    } else {
        fail(vec![format!("si={si}"), format!("not-si={not_si}")])
    })
}

fn radical_square_case(corpus: &[Instance], _caps: &Caps) -> Verdict {
    let mut built = 0;
    for inst in bl_chains(corpus, BL_LIMIT) {
        let r = match radical_square(&inst.doc.algebra) {
            Ok(r) => r,
            Err(Error::Precondition(_)) => continue,
            Err(e) => return Err(e),
        };
        let t = classify_trichotomy(&r.algebra)?;
        if t.case != TrichotomyCase::Local
            || !t.side_conditions_hold()
            || !r.complement_form
            || !r.kernel_matches
            || r.has_nontrivial_boolean
        {
            return Ok(fail(vec![format!("instance={}", inst.name), format!("case={}", t.case)]));
        }
        built += 1;
    }
    Ok(if built > 0 {
        pass(vec![format!("instances={built}")])
    } else {
        fail(vec!["instances=0".into()])
    })
}

fn generator(_corpus: &[Instance], _caps: &Caps) -> Verdict {
    let r = generator_spot_check(3, 5)?;
    let counts = format!(
        "classes={},{},{}",
        r.classes_by_depth[0], r.classes_by_depth[1], r.classes_by_depth[2]
    );
    if r.passes() {
        return Ok(pass(vec![
            format!("algebras={}", r.algebras.len()),
            counts,
            format!("candidates={}", r.candidates),
            format!("diagonal-functions={}", r.diagonal_functions),
        ]));
    }
    let mut d = vec![
        format!("endomorphisms-match={}", r.endomorphisms_match),
        format!("representation-matches={}", r.representation_matches),
    ];
    if let Some((s, t)) = r.discrepancies.first() {
        d.push(format!("identity={}", format!("{s}={t}").replace(' ', "")));
    }
    Ok(fail(d))
}
