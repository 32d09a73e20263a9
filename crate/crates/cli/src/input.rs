use std::fs;
use std::path::Path;

use stabent::{Error, Graph, StabilizerGroup};

/// A parsed input file: a graph if its first meaningful line is an integer,
/// otherwise a generator list.
pub enum Input {
    Graph(Graph),
    Group(StabilizerGroup),
}

impl Input {
    pub fn load(path: &Path) -> Result<Input, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Input, Error> {
        let first = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty());
        match first {
            Some(l) if l.parse::<usize>().is_ok() => Graph::parse(text).map(Input::Graph),
            _ => StabilizerGroup::from_text(text).map(Input::Group),
        }
    }

    pub fn group(&self) -> Result<StabilizerGroup, Error> {
        match self {
            Input::Graph(g) => g.stabilizer_group(),
            Input::Group(s) => Ok(s.clone()),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Input::Graph(g) => g.n(),
            Input::Group(s) => s.n(),
        }
    }
}

/// Loads two inputs acting on the same number of qubits.
pub fn load_pair(a: &Path, b: &Path) -> Result<(Input, Input), String> {
    let (a, b) = (Input::load(a)?, Input::load(b)?);
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        }
        .to_string());
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_kind() {
        assert!(matches!(
            Input::parse("# square\n4\n0 1\n").unwrap(),
            Input::Graph(_)
        ));
        assert!(matches!(
            Input::parse("+XZ\n+ZX\n").unwrap(),
            Input::Group(_)
        ));
        assert!(Input::parse("+XZ\n+XZ\n").is_err());
    }
}
