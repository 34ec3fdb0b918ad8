//! Parsed form of a session script.

use gkverify::ClaimId;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldDecl {
    Rationals,
    Prime(u64),
}

/// Polynomial expression over the variables of one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Var(usize),
    Neg(Box<Expr>),
    /// Summands with a flag marking subtraction.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDef {
    Quotient(String),
    /// Rows of the presentation matrix; columns are relations.
    Coker(Vec<Vec<Expr>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Betti(String),
    Depth(String),
    Dim(String),
    Hilbert(String),
    LocalCoh(String),
    Ext(String, String, usize),
    Hom(String, String),
    /// A ring, an ideal or a quotient module naming `R = S/I`.
    Canonical(String),
    Lyubeznik(String),
    Ass(String),
    Formal { module: String, ideal: String, t: u32 },
    Verify(Option<ClaimId>),
}

impl Command {
    pub fn keyword(&self) -> &'static str {
        match self {
            Command::Betti(_) => "betti",
            Command::Depth(_) => "depth",
            Command::Dim(_) => "dim",
            Command::Hilbert(_) => "hilbert",
            Command::LocalCoh(_) => "localcoh",
            Command::Ext(..) => "ext",
            Command::Hom(..) => "hom",
            Command::Canonical(_) => "canonical",
            Command::Lyubeznik(_) => "lyubeznik",
            Command::Ass(_) => "ass",
            Command::Formal { .. } => "formal",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    Ring { name: String, field: FieldDecl, vars: Vec<String> },
    Ideal { name: String, ring: String, gens: Vec<Expr> },
    Module { name: String, ring: String, def: ModuleDef },
    Command(Command),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub location: Location,
    /// Source text of the statement without the trailing `;`.
    pub text: String,
    pub kind: StatementKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SessionScript {
    pub statements: Vec<Statement>,
}
