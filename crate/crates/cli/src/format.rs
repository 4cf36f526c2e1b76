//! On-disk point clouds and result vectors.
//!
//! Binary layout, all little-endian: `b"ZFMM"`, version `u32`, dimension
//! `u32`, count `u64`, flags `u32`, then the payload. A point is `2·d`
//! floats (real then imaginary part per coordinate); charges follow the
//! points as `(re, im)` pairs when flag bit 0 is set. A result file sets
//! bit 1 and carries one `(re, im)` pair per target.
//!
//! Files whose name ends in `.csv` are read and written as text with a
//! header row instead.

use std::fs;
use std::io::Write;
use std::path::Path;

use cfmm::{CVec, C64};

use crate::CliError;

pub const MAGIC: &[u8; 4] = b"ZFMM";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 24;
pub const FLAG_CHARGES: u32 = 1;
pub const FLAG_RESULT: u32 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub dim: usize,
    /// `count·dim` coordinates, point-major.
    pub coords: Vec<C64>,
    pub charges: Option<Vec<C64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultFile {
    pub dim: usize,
    pub values: Vec<C64>,
}

impl PointCloud {
    pub fn from_points<const D: usize>(pts: &[CVec<D>], charges: Option<Vec<C64>>) -> Self {
        PointCloud { dim: D, coords: pts.iter().flat_map(|p| p.0).collect(), charges }
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// The coordinates as `D`-vectors; `D` must equal `self.dim`.
    pub fn points<const D: usize>(&self) -> Vec<CVec<D>> {
        assert_eq!(D, self.dim);
        self.coords.chunks_exact(D).map(|c| CVec::new(c.try_into().unwrap())).collect()
    }

    pub fn require_charges(&self, path: &str) -> Result<&[C64], CliError> {
        self.charges.as_deref().ok_or_else(|| CliError::Format(path.into(), "file carries no charges".into()))
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let q = self.charges.as_deref().unwrap_or(&[]);
        let flags = if self.charges.is_some() { FLAG_CHARGES } else { 0 };
        let mut out = header(self.dim, self.len(), flags);
        push_complex(&mut out, &self.coords);
        push_complex(&mut out, q);
        out
    }

    pub fn from_bytes(b: &[u8]) -> Result<Self, String> {
        let (dim, n, flags) = parse_header(b)?;
        if flags & !FLAG_CHARGES != 0 {
            return Err(format!("flags {flags:#x} do not describe a point cloud"));
        }
        let has_q = flags & FLAG_CHARGES != 0;
        let want = n.checked_mul(16 * dim + 16 * has_q as usize).and_then(|p| p.checked_add(HEADER_LEN));
        if want != Some(b.len()) {
            return Err(format!("length {} does not match {n} points of dimension {dim}", b.len()));
        }
        let vals = read_complex(&b[HEADER_LEN..]);
        let (coords, q) = vals.split_at(n * dim);
        Ok(PointCloud { dim, coords: coords.to_vec(), charges: has_q.then(|| q.to_vec()) })
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, String> {
        let mut names: Vec<String> = (1..=self.dim).flat_map(|i| [format!("x{i}_re"), format!("x{i}_im")]).collect();
        if self.charges.is_some() {
            names.extend(["q_re".into(), "q_im".into()]);
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&names).map_err(|e| e.to_string())?;
        for i in 0..self.len() {
            let mut row: Vec<String> = Vec::with_capacity(names.len());
            for c in &self.coords[i * self.dim..(i + 1) * self.dim] {
                row.extend([c.re.to_string(), c.im.to_string()]);
            }
            if let Some(q) = &self.charges {
                row.extend([q[i].re.to_string(), q[i].im.to_string()]);
            }
            w.write_record(&row).map_err(|e| e.to_string())?;
        }
        w.into_inner().map_err(|e| e.to_string())
    }

    /// Columns named `q_re`/`q_im` hold charges; the others are coordinate
    /// `(re, im)` pairs in order.
    pub fn from_csv(b: &[u8]) -> Result<Self, String> {
        let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(b);
        let head = r.headers().map_err(|e| e.to_string())?.clone();
        let qcol = |name: &str| head.iter().position(|h| h.eq_ignore_ascii_case(name));
        let q = match (qcol("q_re"), qcol("q_im")) {
            (Some(a), Some(b)) => Some((a, b)),
            (None, None) => None,
            _ => return Err("charge columns need both q_re and q_im".into()),
        };
        let xcols: Vec<usize> = (0..head.len()).filter(|&c| q.map_or(true, |(a, b)| c != a && c != b)).collect();
        if xcols.len() != 4 && xcols.len() != 6 {
            return Err(format!("{} coordinate columns; expected 4 (2-D) or 6 (3-D)", xcols.len()));
        }
        let mut pc = PointCloud { dim: xcols.len() / 2, coords: Vec::new(), charges: q.map(|_| Vec::new()) };
        for (line, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| e.to_string())?;
            let f = |c: usize| -> Result<f64, String> {
                rec.get(c).unwrap_or("").parse::<f64>().map_err(|_| format!("row {}: bad number in column {}", line + 1, c + 1))
            };
            for pair in xcols.chunks(2) {
                pc.coords.push(C64::new(f(pair[0])?, f(pair[1])?));
            }
            if let (Some((a, b)), Some(qs)) = (q, pc.charges.as_mut()) {
                qs.push(C64::new(f(a)?, f(b)?));
            }
        }
        Ok(pc)
    }

    pub fn read(path: &str) -> Result<Self, CliError> {
        let b = read_file(path)?;
        let parsed = if is_csv(path) { Self::from_csv(&b) } else { Self::from_bytes(&b) };
        parsed.map_err(|e| CliError::Format(path.into(), e))
    }

    pub fn write(&self, path: &str) -> Result<(), CliError> {
        let b = if is_csv(path) { self.to_csv().map_err(|e| CliError::Format(path.into(), e))? } else { self.to_bytes() };
        write_file(path, &b)
    }
}

impl ResultFile {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = header(self.dim, self.values.len(), FLAG_RESULT);
        push_complex(&mut out, &self.values);
        out
    }

    pub fn from_bytes(b: &[u8]) -> Result<Self, String> {
        let (dim, n, flags) = parse_header(b)?;
        if flags != FLAG_RESULT {
            return Err(format!("flags {flags:#x} do not describe a result file"));
        }
        if n.checked_mul(16).and_then(|p| p.checked_add(HEADER_LEN)) != Some(b.len()) {
            return Err(format!("length {} does not match {n} values", b.len()));
        }
        Ok(ResultFile { dim, values: read_complex(&b[HEADER_LEN..]) })
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["re", "im"]).map_err(|e| e.to_string())?;
        for v in &self.values {
            w.write_record([v.re.to_string(), v.im.to_string()]).map_err(|e| e.to_string())?;
        }
        w.into_inner().map_err(|e| e.to_string())
    }

    /// Two columns, real then imaginary part. The dimension is unknown in
    /// this form and reads as 0.
    pub fn from_csv(b: &[u8]) -> Result<Self, String> {
        let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(b);
        let mut values = Vec::new();
        for (line, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| e.to_string())?;
            if rec.len() != 2 {
                return Err(format!("row {}: expected 2 columns", line + 1));
            }
            let f = |c: usize| rec[c].parse::<f64>().map_err(|_| format!("row {}: bad number", line + 1));
            values.push(C64::new(f(0)?, f(1)?));
        }
        Ok(ResultFile { dim: 0, values })
    }

    pub fn read(path: &str) -> Result<Self, CliError> {
        let b = read_file(path)?;
        let parsed = if is_csv(path) { Self::from_csv(&b) } else { Self::from_bytes(&b) };
        parsed.map_err(|e| CliError::Format(path.into(), e))
    }

    pub fn write(&self, path: &str) -> Result<(), CliError> {
        let b = if is_csv(path) { self.to_csv().map_err(|e| CliError::Format(path.into(), e))? } else { self.to_bytes() };
        write_file(path, &b)
    }
}

fn is_csv(path: &str) -> bool {
    Path::new(path).extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn header(dim: usize, count: usize, flags: u32) -> Vec<u8> {
    let mut h = Vec::with_capacity(HEADER_LEN);
    h.extend_from_slice(MAGIC);
    h.extend_from_slice(&VERSION.to_le_bytes());
    h.extend_from_slice(&(dim as u32).to_le_bytes());
    h.extend_from_slice(&(count as u64).to_le_bytes());
    h.extend_from_slice(&flags.to_le_bytes());
    h
}

fn parse_header(b: &[u8]) -> Result<(usize, usize, u32), String> {
    if b.len() < HEADER_LEN || &b[..4] != MAGIC {
        return Err("not a ZFMM file".into());
    }
    let u32_at = |o: usize| u32::from_le_bytes(b[o..o + 4].try_into().unwrap());
    if u32_at(4) != VERSION {
        return Err(format!("unsupported format version {}", u32_at(4)));
    }
    let dim = u32_at(8) as usize;
    if dim != 2 && dim != 3 {
        return Err(format!("dimension {dim} is not 2 or 3"));
    }
    let n = u64::from_le_bytes(b[12..20].try_into().unwrap());
    let n = usize::try_from(n).map_err(|_| format!("count {n} too large"))?;
    Ok((dim, n, u32_at(20)))
}

fn push_complex(out: &mut Vec<u8>, v: &[C64]) {
    for z in v {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
}

fn read_complex(b: &[u8]) -> Vec<C64> {
    b.chunks_exact(16)
        .map(|c| C64::new(f64::from_le_bytes(c[..8].try_into().unwrap()), f64::from_le_bytes(c[8..].try_into().unwrap())))
        .collect()
}

fn read_file(path: &str) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write_file(path: &str, b: &[u8]) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.into(), source };
    let mut f = fs::File::create(path).map_err(io)?;
    f.write_all(b).map_err(io)?;
    f.flush().map_err(io)
}
