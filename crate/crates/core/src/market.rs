//! Markets, type distributions, pair surplus distributions, welfare and
//! matching enumeration.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{self, Scalar};

/// Default per-side cap for exhaustive matching enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Firm,
    Worker,
}

/// How pair surpluses are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Distributional: pair surplus is a random variable drawn from priors.
    ExAnte,
    /// The analyst knows every agent's type; pair surplus is a point mass.
    Realized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grade<S> {
    pub label: String,
    pub value: S,
}

impl<S: Scalar> Grade<S> {
    pub fn new(label: impl Into<String>, value: S) -> Self {
        Self {
            label: label.into(),
            value,
        }
    }
}

/// Match surplus by (firm grade, worker grade). Grades on each side are held in
/// strictly ascending order of productivity; index 0 is the lowest grade.
#[derive(Debug, Clone, PartialEq)]
pub struct SurplusTable<S> {
    firm_grades: Vec<Grade<S>>,
    worker_grades: Vec<Grade<S>>,
    entries: Vec<Vec<S>>,
}

impl<S: Scalar> SurplusTable<S> {
    pub fn new(
        firm_grades: Vec<Grade<S>>,
        worker_grades: Vec<Grade<S>>,
        entries: Vec<Vec<S>>,
    ) -> Result<Self> {
        for (side, grades) in [("firm", &firm_grades), ("worker", &worker_grades)] {
            if grades.is_empty() {
                return Err(Error::InvalidSurplus(format!("no {side} grades")));
            }
            if grades.windows(2).any(|w| w[0].value >= w[1].value) {
                return Err(Error::InvalidSurplus(format!(
                    "{side} grades must be strictly ascending"
                )));
            }
            let mut seen = HashSet::new();
            if !grades.iter().all(|g| seen.insert(g.label.as_str())) {
                return Err(Error::InvalidSurplus(format!("duplicate {side} grade label")));
            }
        }
        if entries.len() != firm_grades.len()
            || entries.iter().any(|row| row.len() != worker_grades.len())
        {
            return Err(Error::InvalidSurplus(format!(
                "expected a {}x{} table",
                firm_grades.len(),
                worker_grades.len()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                if *s < S::zero() {
                    return Err(Error::InvalidSurplus(format!("negative entry at ({i},{j})")));
                }
                if j > 0 && row[j - 1] >= *s {
                    return Err(Error::InvalidSurplus(format!(
                        "not strictly increasing in worker grade at ({i},{j})"
                    )));
                }
                if i > 0 && entries[i - 1][j] >= *s {
                    return Err(Error::InvalidSurplus(format!(
                        "not strictly increasing in firm grade at ({i},{j})"
                    )));
                }
            }
        }
        if firm_grades.len() == 2 && worker_grades.len() == 2 && entries[0][1] != entries[1][0] {
            return Err(Error::InvalidSurplus(
                "two-grade table needs S(H,L) = S(L,H)".into(),
            ));
        }
        Ok(Self {
            firm_grades,
            worker_grades,
            entries,
        })
    }

    /// The H/L table: `S(H,H) = alpha`, `S(H,L) = S(L,H) = beta`, `S(L,L) = gamma`.
    pub fn two_grade(alpha: S, beta: S, gamma: S) -> Result<Self> {
        let grades = || vec![Grade::new("L", S::zero()), Grade::new("H", S::one())];
        Self::new(
            grades(),
            grades(),
            vec![vec![gamma, beta.clone()], vec![beta, alpha]],
        )
    }

    pub fn grades(&self, side: Side) -> &[Grade<S>] {
        match side {
            Side::Firm => &self.firm_grades,
            Side::Worker => &self.worker_grades,
        }
    }

    pub fn grade_index(&self, side: Side, label: &str) -> Option<usize> {
        self.grades(side).iter().position(|g| g.label == label)
    }

    pub fn get(&self, firm_grade: usize, worker_grade: usize) -> &S {
        &self.entries[firm_grade][worker_grade]
    }

    pub fn entries(&self) -> &[Vec<S>] {
        &self.entries
    }

    pub fn is_two_grade(&self) -> bool {
        self.firm_grades.len() == 2 && self.worker_grades.len() == 2
    }

    pub fn max_entry(&self) -> &S {
        self.entries.last().and_then(|r| r.last()).expect("nonempty table")
    }

    pub fn min_entry(&self) -> &S {
        &self.entries[0][0]
    }

    /// Strict supermodularity on every 2x2 minor.
    pub fn is_supermodular(&self) -> bool {
        let (n, m) = (self.firm_grades.len(), self.worker_grades.len());
        (1..n).all(|i| {
            (1..m).all(|j| {
                self.entries[i][j].clone() + self.entries[i - 1][j - 1].clone()
                    > self.entries[i][j - 1].clone() + self.entries[i - 1][j].clone()
            })
        })
    }
}

/// Joint distribution of a firm's and a worker's H/L types.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTypeDistribution<S> {
    pub hh: S,
    pub hl: S,
    pub lh: S,
    pub ll: S,
    pub p_firm: S,
    pub p_worker: S,
    pub rho: S,
}

impl<S: Scalar> JointTypeDistribution<S> {
    /// Cell probability indexed by (firm grade, worker grade) with 0 = L, 1 = H.
    pub fn cell(&self, firm_grade: usize, worker_grade: usize) -> &S {
        match (firm_grade, worker_grade) {
            (1, 1) => &self.hh,
            (1, 0) => &self.hl,
            (0, 1) => &self.lh,
            _ => &self.ll,
        }
    }
}

/// Common-prior joint distribution: `P(H,H) = p^2 + rho p (1-p)` and so on.
pub fn build_joint_distribution<S: Scalar>(p: S, rho: S) -> Result<JointTypeDistribution<S>> {
    build_pair_joint(p.clone(), p, rho)
}

/// Joint H/L distribution for a pair with priors `p_firm`, `p_worker` and
/// correlation `rho`. The covariance is `rho * sqrt(var_f * var_w)`, which
/// reduces to `rho p (1-p)` for a common prior.
pub fn build_pair_joint<S: Scalar>(p_firm: S, p_worker: S, rho: S) -> Result<JointTypeDistribution<S>> {
    let zero = S::zero();
    let one = S::one();
    for p in [&p_firm, &p_worker] {
        if *p <= zero || *p >= one {
            return Err(Error::InvalidMarket(format!(
                "prior {} outside (0,1)",
                p.render()
            )));
        }
    }
    if rho < -one.clone() || rho > one {
        return Err(Error::InvalidMarket(format!(
            "correlation {} outside [-1,1]",
            rho.render()
        )));
    }
    let q_firm = one.clone() - p_firm.clone();
    let q_worker = one - p_worker.clone();
    let cov = if rho == zero {
        zero.clone()
    } else if p_firm == p_worker {
        rho.clone() * p_firm.clone() * q_firm.clone()
    } else {
        let var = p_firm.clone() * q_firm.clone() * p_worker.clone() * q_worker.clone();
        let sd = var.sqrt().ok_or_else(|| Error::InexactCorrelation {
            rho: rho.render(),
            p_firm: p_firm.render(),
            p_worker: p_worker.render(),
        })?;
        rho.clone() * sd
    };
    let hh = p_firm.clone() * p_worker.clone() + cov.clone();
    let hl = p_firm.clone() * q_worker.clone() - cov.clone();
    let lh = q_firm.clone() * p_worker.clone() - cov.clone();
    let ll = q_firm * q_worker + cov;
    for (name, cell) in [("HH", &hh), ("HL", &hl), ("LH", &lh), ("LL", &ll)] {
        if num::gt(&zero, cell) {
            return Err(Error::InfeasibleCorrelation {
                rho: rho.render(),
                p_firm: p_firm.render(),
                p_worker: p_worker.render(),
                cell: name,
            });
        }
    }
    let clamp = |x: S| num::max(x, S::zero());
    Ok(JointTypeDistribution {
        hh: clamp(hh),
        hl: clamp(hl),
        lh: clamp(lh),
        ll: clamp(ll),
        p_firm,
        p_worker,
        rho,
    })
}

/// Finite distribution of a pair's match surplus. Atoms are distinct values in
/// ascending order with strictly positive probabilities summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSurplusDistribution<S> {
    atoms: Vec<(S, S)>,
    mean: S,
}

impl<S: Scalar> PairSurplusDistribution<S> {
    /// Aggregates equal values, drops zero-probability atoms and sorts.
    pub fn from_atoms(atoms: impl IntoIterator<Item = (S, S)>) -> Result<Self> {
        let mut merged: Vec<(S, S)> = Vec::new();
        for (value, prob) in atoms {
            if prob < S::zero() {
                return Err(Error::InvalidMarket("negative atom probability".into()));
            }
            match merged.iter_mut().find(|(v, _)| *v == value) {
                Some((_, p)) => *p = p.clone() + prob,
                None => merged.push((value, prob)),
            }
        }
        merged.retain(|(_, p)| !p.is_zero_tol());
        merged.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("comparable surplus"));
        let total = num::sum(merged.iter().map(|(_, p)| p.clone()));
        let sum_ok = if S::EXACT {
            total == S::one()
        } else {
            (total.to_f64() - 1.0).abs() <= 1e-12
        };
        if !sum_ok || merged.is_empty() {
            return Err(Error::InvalidMarket(format!(
                "atom probabilities sum to {}",
                total.render()
            )));
        }
        let mean = num::sum(merged.iter().map(|(v, p)| v.clone() * p.clone()));
        Ok(Self {
            atoms: merged,
            mean,
        })
    }

    pub fn point_mass(value: S) -> Self {
        Self {
            mean: value.clone(),
            atoms: vec![(value, S::one())],
        }
    }

    pub fn atoms(&self) -> &[(S, S)] {
        &self.atoms
    }

    pub fn mean(&self) -> &S {
        &self.mean
    }

    pub fn max_value(&self) -> &S {
        &self.atoms.last().expect("nonempty").0
    }

    pub fn min_value(&self) -> &S {
        &self.atoms[0].0
    }

    /// `P(S > x)`.
    pub fn prob_above(&self, x: &S) -> S {
        num::sum(self.atoms.iter().filter(|(v, _)| v > x).map(|(_, p)| p.clone()))
    }
}

pub fn expected_pair_surplus<S: Scalar>(dist: &PairSurplusDistribution<S>) -> S {
    dist.mean().clone()
}

/// Test power: the smallest surplus gap between a correctly sorted pair and
/// a mis-sorted alternative. `None` for a 1x1 grade table.
pub fn test_power_delta<S: Scalar>(table: &SurplusTable<S>) -> Option<S> {
    // Every gap S(x,y) - max{S(x,y'), S(x',y)} is itself a one-coordinate
    // increment, so minimizing over all strict increments in either argument
    // covers the quadruples and gives min{α-β, β-γ} on two grades.
    let n = table.grades(Side::Firm).len();
    let m = table.grades(Side::Worker).len();
    let mut best: Option<S> = None;
    let mut offer = |gap: S| {
        best = Some(match best.take() {
            Some(b) => num::min(b, gap),
            None => gap,
        });
    };
    for x in 0..n {
        for y in 0..m {
            for xl in 0..x {
                offer(table.get(x, y).clone() - table.get(xl, y).clone());
            }
            for yl in 0..y {
                offer(table.get(x, y).clone() - table.get(x, yl).clone());
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct Agent<S> {
    pub name: String,
    /// Prior probability of the high grade (two-grade markets).
    pub prior: S,
    /// Index into the side's grade list.
    pub realized: Option<usize>,
}

impl<S: Scalar> Agent<S> {
    pub fn new(name: impl Into<String>, prior: S) -> Self {
        Self {
            name: name.into(),
            prior,
            realized: None,
        }
    }

    pub fn with_realized(mut self, grade: usize) -> Self {
        self.realized = Some(grade);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Market<S> {
    firms: Vec<Agent<S>>,
    workers: Vec<Agent<S>>,
    surplus: SurplusTable<S>,
    rho: S,
    mode: Mode,
    distinct_types: bool,
    cap: usize,
}

impl<S: Scalar> Market<S> {
    pub fn new(
        firms: Vec<Agent<S>>,
        workers: Vec<Agent<S>>,
        surplus: SurplusTable<S>,
        rho: S,
        mode: Mode,
        distinct_types: bool,
    ) -> Result<Self> {
        let market = Self {
            firms,
            workers,
            surplus,
            rho,
            mode,
            distinct_types,
            cap: DEFAULT_ENUMERATION_CAP,
        };
        market.validate()?;
        Ok(market)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    fn validate(&self) -> Result<()> {
        let mut names = HashSet::new();
        for a in self.firms.iter().chain(&self.workers) {
            if !names.insert(a.name.as_str()) {
                return Err(Error::InvalidMarket(format!("duplicate agent name `{}`", a.name)));
            }
            if a.prior <= S::zero() || a.prior >= S::one() {
                return Err(Error::InvalidMarket(format!(
                    "prior of {} must lie in (0,1)",
                    a.name
                )));
            }
        }
        for (side, agents) in [(Side::Firm, &self.firms), (Side::Worker, &self.workers)] {
            let grades = self.surplus.grades(side).len();
            for a in agents.iter() {
                match a.realized {
                    Some(g) if g >= grades => {
                        return Err(Error::InvalidMarket(format!(
                            "realized grade of {} out of range",
                            a.name
                        )))
                    }
                    None if self.mode == Mode::Realized => {
                        return Err(Error::MissingRealizedTypes(a.name.clone()))
                    }
                    _ => {}
                }
            }
            if self.distinct_types {
                let distinct = match self.mode {
                    Mode::Realized => {
                        let mut seen = HashSet::new();
                        agents.iter().all(|a| seen.insert(a.realized))
                    }
                    Mode::ExAnte => agents
                        .iter()
                        .enumerate()
                        .all(|(i, a)| agents[..i].iter().all(|b| b.prior != a.prior)),
                };
                if !distinct {
                    return Err(Error::InvalidMarket(format!(
                        "distinct-types flag set but {side:?} types repeat"
                    )));
                }
            }
        }
        if self.mode == Mode::ExAnte {
            if !self.surplus.is_two_grade() {
                return Err(Error::InvalidMarket(
                    "ex-ante mode needs a two-grade (H/L) surplus table".into(),
                ));
            }
            for f in &self.firms {
                for w in &self.workers {
                    build_pair_joint(f.prior.clone(), w.prior.clone(), self.rho.clone())?;
                }
            }
        }
        Ok(())
    }

    pub fn firms(&self) -> &[Agent<S>] {
        &self.firms
    }

    pub fn workers(&self) -> &[Agent<S>] {
        &self.workers
    }

    pub fn agents(&self, side: Side) -> &[Agent<S>] {
        match side {
            Side::Firm => &self.firms,
            Side::Worker => &self.workers,
        }
    }

    pub fn surplus(&self) -> &SurplusTable<S> {
        &self.surplus
    }

    pub fn rho(&self) -> &S {
        &self.rho
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn distinct_types(&self) -> bool {
        self.distinct_types
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn size(&self) -> (usize, usize) {
        (self.firms.len(), self.workers.len())
    }

    /// Looks an agent up by name.
    pub fn find(&self, name: &str) -> Result<(Side, usize)> {
        if let Some(i) = self.firms.iter().position(|a| a.name == name) {
            return Ok((Side::Firm, i));
        }
        if let Some(i) = self.workers.iter().position(|a| a.name == name) {
            return Ok((Side::Worker, i));
        }
        Err(Error::UnknownAgent(name.to_string()))
    }

    /// Resolves a (firm, worker) pair of names, rejecting same-side pairs.
    pub fn find_pair(&self, a: &str, b: &str) -> Result<(usize, usize)> {
        match (self.find(a)?, self.find(b)?) {
            ((Side::Firm, f), (Side::Worker, w)) | ((Side::Worker, w), (Side::Firm, f)) => {
                Ok((f, w))
            }
            _ => Err(Error::SameSide(a.to_string(), b.to_string())),
        }
    }

    /// Distribution over (firm grade, worker grade) profiles with positive
    /// probability, in ascending profile order.
    pub fn pair_type_distribution(&self, firm: usize, worker: usize) -> Result<Vec<((usize, usize), S)>> {
        let (f, w) = (&self.firms[firm], &self.workers[worker]);
        match self.mode {
            Mode::Realized => {
                let fg = f.realized.ok_or_else(|| Error::MissingRealizedTypes(f.name.clone()))?;
                let wg = w.realized.ok_or_else(|| Error::MissingRealizedTypes(w.name.clone()))?;
                Ok(vec![((fg, wg), S::one())])
            }
            Mode::ExAnte => {
                let joint = build_pair_joint(f.prior.clone(), w.prior.clone(), self.rho.clone())?;
                let mut cells = Vec::with_capacity(4);
                for fg in 0..2 {
                    for wg in 0..2 {
                        let p = joint.cell(fg, wg).clone();
                        if !p.is_zero_tol() {
                            cells.push(((fg, wg), p));
                        }
                    }
                }
                Ok(cells)
            }
        }
    }

    pub fn pair_surplus_distribution(&self, firm: usize, worker: usize) -> Result<PairSurplusDistribution<S>> {
        if self.mode == Mode::Realized {
            let (fg, wg) = self.pair_type_distribution(firm, worker)?[0].0;
            return Ok(PairSurplusDistribution::point_mass(self.surplus.get(fg, wg).clone()));
        }
        let cells = self.pair_type_distribution(firm, worker)?;
        PairSurplusDistribution::from_atoms(
            cells
                .into_iter()
                .map(|((fg, wg), p)| (self.surplus.get(fg, wg).clone(), p)),
        )
    }

    /// Expected (or realized) surplus of every firm-worker pair, `[firm][worker]`.
    pub fn pair_means(&self) -> Result<Vec<Vec<S>>> {
        (0..self.firms.len())
            .map(|f| {
                (0..self.workers.len())
                    .map(|w| Ok(self.pair_surplus_distribution(f, w)?.mean().clone()))
                    .collect()
            })
            .collect()
    }

    /// Per-side sorting keys: realized grade values, or priors when they are
    /// distinct within the side.
    pub fn sort_keys(&self, side: Side) -> Result<Vec<S>> {
        let agents = self.agents(side);
        if agents.iter().all(|a| a.realized.is_some()) {
            let grades = self.surplus.grades(side);
            return Ok(agents
                .iter()
                .map(|a| grades[a.realized.expect("checked")].value.clone())
                .collect());
        }
        let distinct = agents
            .iter()
            .enumerate()
            .all(|(i, a)| agents[..i].iter().all(|b| b.prior != a.prior));
        if distinct {
            Ok(agents.iter().map(|a| a.prior.clone()).collect())
        } else {
            Err(Error::NoSortKey)
        }
    }
}

/// Injective partial map from firms to workers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    firm_partner: Vec<Option<usize>>,
    worker_partner: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(firms: usize, workers: usize) -> Self {
        Self {
            firm_partner: vec![None; firms],
            worker_partner: vec![None; workers],
        }
    }

    pub fn from_pairs(firms: usize, workers: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = Self::empty(firms, workers);
        for &(f, w) in pairs {
            if f >= firms || w >= workers {
                return Err(Error::InvalidMatching(format!("pair ({f},{w}) out of range")));
            }
            if m.firm_partner[f].is_some() || m.worker_partner[w].is_some() {
                return Err(Error::InvalidMatching(format!("agent in pair ({f},{w}) matched twice")));
            }
            m.firm_partner[f] = Some(w);
            m.worker_partner[w] = Some(f);
        }
        Ok(m)
    }

    pub fn from_firm_partners(firm_partner: Vec<Option<usize>>, workers: usize) -> Result<Self> {
        let pairs: Vec<_> = firm_partner
            .iter()
            .enumerate()
            .filter_map(|(f, w)| w.map(|w| (f, w)))
            .collect();
        Self::from_pairs(firm_partner.len(), workers, &pairs)
    }

    pub fn firm_partner(&self, firm: usize) -> Option<usize> {
        self.firm_partner[firm]
    }

    pub fn worker_partner(&self, worker: usize) -> Option<usize> {
        self.worker_partner[worker]
    }

    pub fn firm_partners(&self) -> &[Option<usize>] {
        &self.firm_partner
    }

    pub fn size(&self) -> (usize, usize) {
        (self.firm_partner.len(), self.worker_partner.len())
    }

    /// Matched pairs in firm order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.firm_partner
            .iter()
            .enumerate()
            .filter_map(|(f, w)| w.map(|w| (f, w)))
    }

    pub fn len(&self) -> usize {
        self.pairs().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn unmatched(&self) -> (Vec<usize>, Vec<usize>) {
        let firms = (0..self.firm_partner.len())
            .filter(|&f| self.firm_partner[f].is_none())
            .collect();
        let workers = (0..self.worker_partner.len())
            .filter(|&w| self.worker_partner[w].is_none())
            .collect();
        (firms, workers)
    }

    pub fn fits<S>(&self, market: &Market<S>) -> bool {
        self.firm_partner.len() == market.firms.len() && self.worker_partner.len() == market.workers.len()
    }

    /// Renders as `f1-w2, f2-w1` using market names.
    pub fn describe<S>(&self, market: &Market<S>) -> String {
        let parts: Vec<String> = self
            .pairs()
            .map(|(f, w)| format!("{}-{}", market.firms[f].name, market.workers[w].name))
            .collect();
        if parts.is_empty() {
            "(empty)".into()
        } else {
            parts.join(", ")
        }
    }

    /// Named pair list, `[(firm, worker)]`.
    pub fn named_pairs<S>(&self, market: &Market<S>) -> Vec<(String, String)> {
        self.pairs()
            .map(|(f, w)| (market.firms[f].name.clone(), market.workers[w].name.clone()))
            .collect()
    }
}

/// Total expected (or realized) surplus of the matched pairs. With
/// `menu_cost`, that cost is charged once per matched pair.
pub fn expected_welfare<S: Scalar>(market: &Market<S>, matching: &Matching, menu_cost: Option<&S>) -> Result<S> {
    let mut total = S::zero();
    for (f, w) in matching.pairs() {
        total = total + market.pair_surplus_distribution(f, w)?.mean().clone();
        if let Some(c) = menu_cost {
            total = total - c.clone();
        }
    }
    Ok(total)
}

/// `sum_k C(n,k) C(m,k) k!`.
pub fn matching_count(firms: usize, workers: usize) -> u128 {
    let choose = |n: u128, k: u128| -> u128 { (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1)) };
    (0..=firms.min(workers) as u128)
        .map(|k| choose(firms as u128, k) * choose(workers as u128, k) * (1..=k).product::<u128>())
        .sum()
}

/// Every injective partial matching, in lexicographic order of the firm
/// partner vector (unmatched sorts first).
pub fn enumerate_matchings<S>(market: &Market<S>) -> Result<Vec<Matching>> {
    let (n, m) = (market.firms.len(), market.workers.len());
    if n > market.cap || m > market.cap {
        return Err(Error::SizeCapExceeded {
            firms: n,
            workers: m,
            cap: market.cap,
        });
    }
    Ok(enumerate_all(n, m))
}

pub(crate) fn enumerate_all(n: usize, m: usize) -> Vec<Matching> {
    fn rec(f: usize, n: usize, m: usize, partner: &mut Vec<Option<usize>>, used: &mut [bool], out: &mut Vec<Matching>) {
        if f == n {
            out.push(Matching::from_firm_partners(partner.clone(), m).expect("injective by construction"));
            return;
        }
        partner.push(None);
        rec(f + 1, n, m, partner, used, out);
        partner.pop();
        for w in 0..m {
            if !used[w] {
                used[w] = true;
                partner.push(Some(w));
                rec(f + 1, n, m, partner, used, out);
                partner.pop();
                used[w] = false;
            }
        }
    }
    let mut out = Vec::with_capacity(matching_count(n, m) as usize);
    rec(0, n, m, &mut Vec::with_capacity(n), &mut vec![false; m], &mut out);
    out
}

/// No matched cross pair is sorted against the keys; unmatched agents ignored.
pub fn is_positively_assortative<S: Scalar>(market: &Market<S>, matching: &Matching) -> Result<bool> {
    let fk = market.sort_keys(Side::Firm)?;
    let wk = market.sort_keys(Side::Worker)?;
    let pairs: Vec<_> = matching.pairs().collect();
    for (i, &(f, w)) in pairs.iter().enumerate() {
        for &(g, v) in &pairs[i + 1..] {
            let crossed = (fk[f] > fk[g] && wk[w] < wk[v]) || (fk[f] < fk[g] && wk[w] > wk[v]);
            if crossed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Grade label counts per side, for summaries.
pub fn realized_profile<S: Scalar>(market: &Market<S>, side: Side) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    let grades = market.surplus().grades(side);
    for a in market.agents(side) {
        if let Some(g) = a.realized {
            *counts.entry(grades[g].label.clone()).or_insert(0) += 1;
        }
    }
    counts
}
