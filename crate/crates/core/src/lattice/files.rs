use serde::{Deserialize, Serialize};

use crate::exactnum::IntMat;

use super::{Lattice, LatticeError, Sublattice};

#[derive(Serialize, Deserialize)]
struct LatticeFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    gram: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<Vec<i64>>>,
}

/// Parses a lattice file: `{ "name": optional, "gram": [[...]] }`.
/// Rejected unless the gram is square and symmetric.
pub fn parse_lattice_file(text: &str) -> Result<Lattice, LatticeError> {
    let file: LatticeFile =
        serde_json::from_str(text).map_err(|e| LatticeError::FileFormat(e.to_string()))?;
    lattice_of(&file)
}

fn lattice_of(file: &LatticeFile) -> Result<Lattice, LatticeError> {
    let rows = file.gram.len();
    for row in &file.gram {
        if row.len() != rows {
            return Err(LatticeError::FileFormat("gram is not square".into()));
        }
    }
    let gram = IntMat::from_rows(&file.gram);
    if !gram.is_symmetric() {
        return Err(LatticeError::FileFormat("gram is not symmetric".into()));
    }
    let lattice = Lattice::new(gram)?;
    Ok(match &file.name {
        Some(n) => lattice.with_name(n.clone()),
        None => lattice,
    })
}

/// Parses a sublattice file: a lattice file with an extra `basis` field of
/// generator rows in ambient coordinates.
pub fn parse_sublattice_file(text: &str) -> Result<Sublattice, LatticeError> {
    let file: LatticeFile =
        serde_json::from_str(text).map_err(|e| LatticeError::FileFormat(e.to_string()))?;
    let lattice = lattice_of(&file)?;
    let basis_rows = file
        .basis
        .as_ref()
        .ok_or_else(|| LatticeError::FileFormat("missing basis".into()))?;
    for row in basis_rows {
        if row.len() != lattice.rank() {
            return Err(LatticeError::FileFormat(
                "basis width does not match gram".into(),
            ));
        }
    }
    let basis = if basis_rows.is_empty() {
        IntMat::zeros(0, lattice.rank())
    } else {
        IntMat::from_rows(basis_rows)
    };
    lattice.sublattice(basis)
}

/// Canonical JSON rendering of a lattice (sorted keys, no whitespace
/// surprises); re-parses to an equal gram matrix.
pub fn render_lattice_file(lattice: &Lattice) -> String {
    let gram: Vec<Vec<i64>> = (0..lattice.rank())
        .map(|i| {
            (0..lattice.rank())
                .map(|j| i64::try_from(lattice.gram().at(i, j)).expect("entry fits"))
                .collect()
        })
        .collect();
    let file = LatticeFile {
        name: lattice.name().map(str::to_string),
        gram,
        basis: None,
    };
    let mut value = serde_json::to_value(&file).expect("serializable");
    sort_keys(&mut value);
    serde_json::to_string_pretty(&value).expect("serializable")
}

fn sort_keys(value: &mut serde_json::Value) {
    if let serde_json::Value::Object(map) = value {
        let mut entries: Vec<(String, serde_json::Value)> =
            map.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut sorted = serde_json::Map::new();
        for (k, mut v) in entries {
            sort_keys(&mut v);
            sorted.insert(k, v);
        }
        *value = serde_json::Value::Object(sorted);
    } else if let serde_json::Value::Array(items) = value {
        for item in items {
            sort_keys(item);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let l = super::super::named::parse_lattice_name("U(2)+A1").unwrap();
        let text = render_lattice_file(&l);
        let back = parse_lattice_file(&text).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn asymmetric_rejected() {
        let text = r#"{"gram": [[0, 1], [2, 0]]}"#;
        assert!(parse_lattice_file(text).is_err());
    }

    #[test]
    fn non_square_rejected() {
        let text = r#"{"gram": [[0, 1]]}"#;
        assert!(parse_lattice_file(text).is_err());
    }

    #[test]
    fn sublattice_file() {
        let text = r#"{"gram": [[-2, 1], [1, -2]], "basis": [[1, 0]]}"#;
        let s = parse_sublattice_file(text).unwrap();
        assert_eq!(s.rank(), 1);
    }
}
