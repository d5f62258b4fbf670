//! Text serialization for lattice data.
//!
//! Fields and spectra share one format: a header line `n,N,L,domain` with
//! `domain` in `{space,freq}`, followed by one line per sample,
//! `index...,re,im`, with per-axis storage indices in lexicographic order.
//! Product fields use `domain = product` and carry both factors' indices.
//! Floats are written with Rust's shortest round-trip formatting, so
//! write/read cycles are bit-identical for finite values.

use crate::{HarnessError, Result};
use bifour_core::norms::ProductField;
use bifour_core::{C64, Field, Lattice, Spectrum};
use std::io::{BufRead, Write};
use std::path::Path;

/// Either side of the transform, as stored on disk.
#[derive(Debug, Clone)]
pub enum FieldFile {
    Space(Field),
    Freq(Spectrum),
}

fn write_header(out: &mut impl Write, lat: &Lattice, domain: &str) -> Result<()> {
    writeln!(out, "{},{},{},{}", lat.dim(), lat.size(), lat.period(), domain)?;
    Ok(())
}

fn write_samples(out: &mut impl Write, lat: &Lattice, values: &[C64]) -> Result<()> {
    for (i, v) in values.iter().enumerate() {
        for a in lat.decode(i) {
            write!(out, "{a},")?;
        }
        writeln!(out, "{},{}", v.re, v.im)?;
    }
    Ok(())
}

pub fn write_field(out: &mut impl Write, f: &Field) -> Result<()> {
    write_header(out, f.lattice(), "space")?;
    write_samples(out, f.lattice(), f.values())
}

pub fn write_spectrum(out: &mut impl Write, s: &Spectrum) -> Result<()> {
    write_header(out, s.lattice(), "freq")?;
    write_samples(out, s.lattice(), s.coeffs())
}

pub fn write_product_field(out: &mut impl Write, pf: &ProductField) -> Result<()> {
    let lat = pf.factor_lattice();
    write_header(out, lat, "product")?;
    let p = pf.points_per_factor();
    for i1 in 0..p {
        for i2 in 0..p {
            for a in lat.decode(i1) {
                write!(out, "{a},")?;
            }
            for a in lat.decode(i2) {
                write!(out, "{a},")?;
            }
            let v = pf.get(i1, i2);
            writeln!(out, "{},{}", v.re, v.im)?;
        }
    }
    Ok(())
}

struct Header {
    lat: Lattice,
    domain: String,
}

fn parse_header(line: &str) -> Result<Header> {
    let parts: Vec<&str> = line.trim().split(',').collect();
    if parts.len() != 4 {
        return Err(HarnessError::Parse(format!("bad header: {line:?}")));
    }
    let n: usize =
        parts[0].parse().map_err(|_| HarnessError::Parse(format!("bad dimension: {}", parts[0])))?;
    let size: usize =
        parts[1].parse().map_err(|_| HarnessError::Parse(format!("bad size: {}", parts[1])))?;
    let period: f64 =
        parts[2].parse().map_err(|_| HarnessError::Parse(format!("bad period: {}", parts[2])))?;
    let lat = Lattice::new(n, size, period)?;
    Ok(Header { lat, domain: parts[3].to_string() })
}

fn parse_samples(
    lines: impl Iterator<Item = std::io::Result<String>>,
    lat: &Lattice,
    indices_per_line: usize,
) -> Result<Vec<(Vec<usize>, C64)>> {
    let per_axis = lat.dim() * indices_per_line;
    let mut out = Vec::new();
    for line in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let parts: Vec<&str> = t.split(',').collect();
        if parts.len() != per_axis + 2 {
            return Err(HarnessError::Parse(format!("bad sample line: {t:?}")));
        }
        let mut idx = Vec::with_capacity(per_axis);
        for p in &parts[..per_axis] {
            idx.push(p.parse::<usize>().map_err(|_| {
                HarnessError::Parse(format!("bad index: {p}"))
            })?);
        }
        let re: f64 = parts[per_axis]
            .parse()
            .map_err(|_| HarnessError::Parse(format!("bad real part: {}", parts[per_axis])))?;
        let im: f64 = parts[per_axis + 1]
            .parse()
            .map_err(|_| HarnessError::Parse(format!("bad imaginary part: {}", parts[per_axis + 1])))?;
        out.push((idx, C64::new(re, im)));
    }
    Ok(out)
}

fn collect_values(
    samples: Vec<(Vec<usize>, C64)>,
    lat: &Lattice,
    indices_per_line: usize,
) -> Result<Vec<C64>> {
    let total = if indices_per_line == 1 { lat.points() } else { lat.points() * lat.points() };
    let mut values = vec![None; total];
    for (idx, v) in samples {
        let n = lat.dim();
        for &a in &idx {
            if a >= lat.size() {
                return Err(HarnessError::Parse(format!("index {a} out of range")));
            }
        }
        let slot = if indices_per_line == 1 {
            lat.encode(&idx)
        } else {
            lat.encode(&idx[..n]) * lat.points() + lat.encode(&idx[n..])
        };
        values[slot] = Some(v);
    }
    values
        .into_iter()
        .collect::<Option<Vec<C64>>>()
        .ok_or_else(|| HarnessError::Parse("missing samples".to_string()))
}

pub fn read_field_file(input: &mut impl BufRead) -> Result<FieldFile> {
    let mut header = String::new();
    input.read_line(&mut header)?;
    let h = parse_header(&header)?;
    if h.domain == "product" {
        return Err(HarnessError::Parse("expected a field file, found a product field".into()));
    }
    let samples = parse_samples(input.lines(), &h.lat, 1)?;
    let values = collect_values(samples, &h.lat, 1)?;
    match h.domain.as_str() {
        "space" => Ok(FieldFile::Space(Field::new(h.lat, values)?)),
        "freq" => Ok(FieldFile::Freq(Spectrum::new(h.lat, values)?)),
        other => Err(HarnessError::Parse(format!("unknown domain: {other}"))),
    }
}

/// Reads a field, inverting a frequency-side file to samples.
pub fn read_field(input: &mut impl BufRead) -> Result<Field> {
    Ok(match read_field_file(input)? {
        FieldFile::Space(f) => f,
        FieldFile::Freq(s) => s.inverse(),
    })
}

pub fn read_product_field(input: &mut impl BufRead) -> Result<ProductField> {
    let mut header = String::new();
    input.read_line(&mut header)?;
    let h = parse_header(&header)?;
    if h.domain != "product" {
        return Err(HarnessError::Parse(format!("expected a product field, found {}", h.domain)));
    }
    let samples = parse_samples(input.lines(), &h.lat, 2)?;
    let values = collect_values(samples, &h.lat, 2)?;
    let mut pf = ProductField::zero(h.lat);
    pf.values_mut().copy_from_slice(&values);
    Ok(pf)
}

pub fn read_field_path(path: &Path) -> Result<Field> {
    let file = std::fs::File::open(path).map_err(|e| {
        HarnessError::Parse(format!("cannot open {}: {e}", path.display()))
    })?;
    read_field(&mut std::io::BufReader::new(file))
}

pub fn write_field_path(path: &Path, f: &Field) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_field(&mut out, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bifour_core::rng::SeededRng;

    fn random_field(lat: Lattice, seed: u64) -> Field {
        let mut rng = SeededRng::new(seed);
        Field::new(lat, (0..lat.points()).map(|_| rng.complex_gaussian()).collect()).unwrap()
    }

    #[test]
    fn field_round_trip_is_bit_identical() {
        for lat in
            [Lattice::new(1, 16, std::f64::consts::TAU).unwrap(), Lattice::new(2, 8, 3.5).unwrap()]
        {
            let f = random_field(lat, 3);
            let mut buf = Vec::new();
            write_field(&mut buf, &f).unwrap();
            let g = read_field(&mut std::io::BufReader::new(&buf[..])).unwrap();
            assert_eq!(g.lattice(), f.lattice());
            for (a, b) in f.values().iter().zip(g.values()) {
                assert_eq!(a.re.to_bits(), b.re.to_bits());
                assert_eq!(a.im.to_bits(), b.im.to_bits());
            }
            let mut buf2 = Vec::new();
            write_field(&mut buf2, &g).unwrap();
            assert_eq!(buf, buf2);
        }
    }

    #[test]
    fn spectrum_round_trip() {
        let lat = Lattice::new(1, 8, 2.0 * std::f64::consts::PI).unwrap();
        let s = random_field(lat, 9).transform();
        let mut buf = Vec::new();
        write_spectrum(&mut buf, &s).unwrap();
        match read_field_file(&mut std::io::BufReader::new(&buf[..])).unwrap() {
            FieldFile::Freq(t) => {
                for (a, b) in s.coeffs().iter().zip(t.coeffs()) {
                    assert_eq!(a.re.to_bits(), b.re.to_bits());
                    assert_eq!(a.im.to_bits(), b.im.to_bits());
                }
            }
            FieldFile::Space(_) => panic!("domain tag lost"),
        }
    }

    #[test]
    fn product_field_round_trip() {
        let lat = Lattice::new(1, 8, std::f64::consts::TAU).unwrap();
        let pf = ProductField::random_bandlimited(lat, 4, 2.0);
        let mut buf = Vec::new();
        write_product_field(&mut buf, &pf).unwrap();
        let back = read_product_field(&mut std::io::BufReader::new(&buf[..])).unwrap();
        for (a, b) in pf.values().iter().zip(back.values()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn malformed_inputs_error() {
        let bad = b"1,8\n";
        assert!(read_field(&mut std::io::BufReader::new(&bad[..])).is_err());
        let missing = b"1,8,6.283185307179586,space\n0,1.0,0.0\n";
        assert!(read_field(&mut std::io::BufReader::new(&missing[..])).is_err());
    }
}
