use std::fmt;

use super::machine::{Move, TmSpec};
use super::TmError;

/// State, head position and tape contents.
///
/// The tape is stored as a finite prefix: it always covers the head cell
/// and carries no trailing blanks beyond it, so equal configurations have
/// equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    state: usize,
    head: usize,
    tape: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Next(Configuration),
    Halted,
}

/// Result of running a machine with a step budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    /// Reached a halting state after this many steps.
    Halted { steps: u64, config: Configuration },
    /// Still running after the budget was spent.
    Running { config: Configuration },
}

impl RunOutcome {
    pub fn halt_step(&self) -> Option<u64> {
        match self {
            RunOutcome::Halted { steps, .. } => Some(*steps),
            RunOutcome::Running { .. } => None,
        }
    }
}

impl Configuration {
    /// Builds a configuration, validating indices against `spec`.
    pub fn new(spec: &TmSpec, state: usize, head: usize, tape: Vec<usize>) -> Result<Self, TmError> {
        if state >= spec.state_count() {
            return Err(TmError::InvalidConfiguration(format!("state {state} out of range")));
        }
        if let Some(&s) = tape.iter().find(|&&s| s >= spec.symbol_count()) {
            return Err(TmError::InvalidConfiguration(format!("symbol {s} out of range")));
        }
        Ok(Self::normalized(state, head, tape))
    }

    pub(crate) fn normalized(state: usize, head: usize, mut tape: Vec<usize>) -> Self {
        if tape.len() <= head {
            tape.resize(head + 1, 0);
        }
        while tape.len() > head + 1 && tape.last() == Some(&0) {
            tape.pop();
        }
        Configuration { state, head, tape }
    }

    /// Start state, head on cell 0, input written from cell 0.
    pub fn initial(spec: &TmSpec, input: &str) -> Result<Self, TmError> {
        Ok(Self::normalized(spec.start(), 0, spec.encode_input(input)?))
    }

    pub fn state(&self) -> usize {
        self.state
    }

    pub fn head(&self) -> usize {
        self.head
    }

    pub fn tape(&self) -> &[usize] {
        &self.tape
    }

    pub fn is_halting(&self, spec: &TmSpec) -> bool {
        spec.is_halting(self.state)
    }

    /// The tape as a string, without trailing blanks.
    pub fn tape_string(&self, spec: &TmSpec) -> String {
        let end = self.tape.iter().rposition(|&s| s != 0).map_or(0, |i| i + 1);
        self.tape[..end].iter().map(|&s| spec.symbol(s)).collect()
    }

    pub fn display<'a>(&'a self, spec: &'a TmSpec) -> impl fmt::Display + 'a {
        ConfigDisplay { config: self, spec }
    }
}

struct ConfigDisplay<'a> {
    config: &'a Configuration,
    spec: &'a TmSpec,
}

impl fmt::Display for ConfigDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.config;
        for (i, &s) in c.tape.iter().enumerate() {
            if i == c.head {
                write!(f, "[{}]", self.spec.state_name(c.state))?;
            }
            write!(f, "{}", self.spec.symbol(s))?;
        }
        Ok(())
    }
}

/// One transition, or `Halted` when the state is halting.
pub fn step(spec: &TmSpec, c: &Configuration) -> Step {
    let Some(rule) = spec.rule(c.state, c.tape[c.head]) else {
        return Step::Halted;
    };
    let mut tape = c.tape.clone();
    tape[c.head] = rule.write;
    let head = match rule.movement {
        Move::Left => c.head.saturating_sub(1),
        Move::Right => c.head + 1,
        Move::Stay => c.head,
    };
    Step::Next(Configuration::normalized(rule.next, head, tape))
}

/// Runs from `c` for at most `budget` steps.
pub fn run_from(spec: &TmSpec, c: Configuration, budget: u64) -> RunOutcome {
    let mut config = c;
    for steps in 0..=budget {
        if config.is_halting(spec) {
            return RunOutcome::Halted { steps, config };
        }
        if steps == budget {
            break;
        }
        match step(spec, &config) {
            Step::Next(next) => config = next,
            Step::Halted => unreachable!("non-halting states have total rules"),
        }
    }
    RunOutcome::Running { config }
}

pub fn run(spec: &TmSpec, input: &str, budget: u64) -> Result<RunOutcome, TmError> {
    Ok(run_from(spec, Configuration::initial(spec, input)?, budget))
}

/// The configurations `c₀, c₁, …` up to the first halting one or `budget`
/// steps, whichever comes first.
pub fn trajectory(spec: &TmSpec, input: &str, budget: u64) -> Result<Vec<Configuration>, TmError> {
    let mut out = vec![Configuration::initial(spec, input)?];
    for _ in 0..budget {
        match step(spec, out.last().expect("non-empty")) {
            Step::Next(c) => out.push(c),
            Step::Halted => break,
        }
    }
    Ok(out)
}
