//! Public-suffix rules and registrable-domain extraction.
//!
//! Rules follow the standard public-suffix list format: one rule per line,
//! `*` wildcards match exactly one label, `!` marks exception rules, and
//! `//` starts a comment. When no rule matches, the implicit `*` rule
//! applies (the rightmost label is the public suffix).

use std::collections::HashMap;
use std::fmt;

/// Bundled rule set covering the fixtures and conformance vectors.
pub const BUNDLED_RULES: &str = include_str!("../../data/public_suffix.dat");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainError {
    /// Input had no host part (empty, or nothing after `@`).
    MissingHost(String),
    /// Host is malformed: empty label, leading/trailing dot, or whitespace.
    MalformedHost(String),
    /// Host consists entirely of a public suffix; no registrable domain.
    NoRegistrableDomain(String),
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainError::MissingHost(raw) => write!(f, "no host part in {raw:?}"),
            DomainError::MalformedHost(raw) => write!(f, "malformed host {raw:?}"),
            DomainError::NoRegistrableDomain(raw) => {
                write!(f, "{raw:?} is a public suffix with no registrable domain")
            }
        }
    }
}

impl std::error::Error for DomainError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RuleKind {
    Normal,
    Wildcard,
    Exception,
}

/// A parsed public-suffix rule set.
#[derive(Debug, Clone)]
pub struct PslRules {
    // key: rule labels joined by '.', without any '!' marker
    rules: HashMap<String, RuleKind>,
}

impl PslRules {
    /// Parse rules from the standard one-rule-per-line text format.
    pub fn parse(text: &str) -> Self {
        let mut rules = HashMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with("//") {
                continue;
            }
            // only the part up to the first whitespace is the rule
            let rule = line.split_whitespace().next().unwrap_or("");
            if rule.is_empty() {
                continue;
            }
            if let Some(body) = rule.strip_prefix('!') {
                rules.insert(body.to_lowercase(), RuleKind::Exception);
            } else if rule.starts_with("*.") {
                rules.insert(rule.to_lowercase(), RuleKind::Wildcard);
            } else {
                rules.insert(rule.to_lowercase(), RuleKind::Normal);
            }
        }
        PslRules { rules }
    }

    /// The default rule set bundled with the crate.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_RULES)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Number of labels in the public suffix of `labels`, per the standard
    /// matching algorithm (exception beats wildcard/normal, longest wins,
    /// implicit `*` when nothing matches).
    fn public_suffix_len(&self, labels: &[String]) -> usize {
        let n = labels.len();
        let mut best: usize = 1; // implicit `*` rule
        for i in 0..n {
            let suffix = labels[i..].join(".");
            match self.rules.get(&suffix) {
                Some(RuleKind::Exception) => {
                    // public suffix is the exception rule minus its leftmost label
                    return n - i - 1;
                }
                Some(RuleKind::Normal) => best = best.max(n - i),
                _ => {}
            }
            if n - i >= 2 {
                let wild = format!("*.{}", labels[i + 1..].join("."));
                if self.rules.get(&wild) == Some(&RuleKind::Wildcard) {
                    best = best.max(n - i);
                }
            }
        }
        best
    }

    /// Registrable domain of a bare host (one label above the public suffix),
    /// lowercased. Errors on malformed hosts; returns
    /// [`DomainError::NoRegistrableDomain`] when the host itself is a suffix.
    pub fn registrable_domain(&self, host: &str) -> Result<String, DomainError> {
        let host_norm = host.trim().trim_end_matches('.').to_lowercase();
        if host_norm.is_empty() {
            return Err(DomainError::MissingHost(host.to_string()));
        }
        if host_norm.starts_with('.')
            || host_norm.contains("..")
            || host_norm.chars().any(|c| c.is_whitespace())
        {
            return Err(DomainError::MalformedHost(host.to_string()));
        }
        let labels: Vec<String> = host_norm.split('.').map(str::to_string).collect();
        let ps_len = self.public_suffix_len(&labels);
        if labels.len() <= ps_len {
            return Err(DomainError::NoRegistrableDomain(host.to_string()));
        }
        Ok(labels[labels.len() - ps_len - 1..].join("."))
    }
}

/// Registrable domain of an email address or bare host.
///
/// For addresses, the host is everything after the last `@`; surrounding
/// angle brackets are tolerated.
pub fn extract_registrable_domain(
    address_or_host: &str,
    rules: &PslRules,
) -> Result<String, DomainError> {
    let trimmed = address_or_host.trim().trim_matches(|c| c == '<' || c == '>');
    let host = match trimmed.rfind('@') {
        Some(idx) => &trimmed[idx + 1..],
        None => trimmed,
    };
    if host.is_empty() {
        return Err(DomainError::MissingHost(address_or_host.to_string()));
    }
    rules.registrable_domain(host)
}
