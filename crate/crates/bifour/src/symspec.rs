//! Parsing of symbol references of the form `name(param=value, word, ...)`
//! used by the CLI and check configs to address the symbol catalog.

use crate::{HarnessError, Result};
use bifour_core::symbols::{BilinearSymbol, SymbolParams, symbol_library};
use bifour_core::Lattice;

/// Splits `name(args)` into the catalog name and its parameters.
pub fn parse_symbol_spec(spec: &str) -> Result<(String, SymbolParams)> {
    let spec = spec.trim();
    let (name, args) = match spec.split_once('(') {
        None => (spec, ""),
        Some((name, rest)) => {
            let rest = rest.trim_end();
            let inner = rest.strip_suffix(')').ok_or_else(|| {
                HarnessError::Parse(format!("unbalanced parentheses in symbol spec: {spec:?}"))
            })?;
            (name.trim(), inner)
        }
    };
    if name.is_empty() {
        return Err(HarnessError::Parse("empty symbol name".to_string()));
    }
    let mut params = SymbolParams::default();
    for raw in args.split(',') {
        let arg = raw.trim();
        if arg.is_empty() {
            continue;
        }
        match arg.split_once('=') {
            Some((key, value)) => {
                let v: f64 = value.trim().parse().map_err(|_| {
                    HarnessError::Parse(format!("bad numeric value in symbol spec: {arg:?}"))
                })?;
                params.nums.push((key.trim().to_string(), v));
            }
            None => params.words.push(arg.to_string()),
        }
    }
    Ok((name.to_string(), params))
}

/// Resolves a symbol spec against the catalog on the given lattice.
pub fn resolve_symbol(spec: &str, lat: &Lattice) -> Result<BilinearSymbol> {
    let (name, params) = parse_symbol_spec(spec)?;
    Ok(symbol_library(&name, &params, lat)?)
}

/// Catalog names understood by `resolve_symbol`, for `bifour symbols`.
pub const SYMBOL_NAMES: &[&str] = &[
    "constant-one",
    "coifman-meyer(alpha)",
    "homogeneous-angular(ell)",
    "vanish-at-xi2-zero(alpha)",
    "vanish-on-antidiagonal(alpha)",
    "random-bandlimited(seed,radius)",
    "tensor(a,b) with profiles gauss | lorentz | wave",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_names_params_and_words() {
        let (name, p) = parse_symbol_spec("coifman-meyer(alpha=1.5)").unwrap();
        assert_eq!(name, "coifman-meyer");
        assert_eq!(p.num("alpha", 0.0), 1.5);

        let (name, p) = parse_symbol_spec("tensor(gauss, lorentz)").unwrap();
        assert_eq!(name, "tensor");
        assert_eq!(p.words, vec!["gauss", "lorentz"]);

        let (name, p) = parse_symbol_spec("constant-one").unwrap();
        assert_eq!(name, "constant-one");
        assert!(p.nums.is_empty() && p.words.is_empty());
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(parse_symbol_spec("foo(alpha=x)").is_err());
        assert!(parse_symbol_spec("foo(alpha=1").is_err());
        assert!(parse_symbol_spec("").is_err());
    }

    #[test]
    fn resolves_against_catalog() {
        let lat = Lattice::new(1, 16, std::f64::consts::TAU).unwrap();
        assert!(resolve_symbol("constant-one", &lat).is_ok());
        assert!(resolve_symbol("no-such-symbol", &lat).is_err());
    }
}
