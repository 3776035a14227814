//! The per-filling output record shared by the JSON and CSV encodings.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::fillings::{extremal_form, Filling};
use crate::rationals::cf_measures;
use crate::serial::{fits_i64, WireInt};

pub const SCHEMA_VERSION: u32 = 1;

/// Column order of the CSV encoding.
pub const CSV_HEADER: [&str; 13] = [
    "p",
    "q",
    "q_canonical",
    "cap",
    "tuple",
    "b2",
    "pi1",
    "extremal_n",
    "extremal_d",
    "extremal_c",
    "len",
    "U",
    "V",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremal {
    pub n: BigInt,
    pub d: BigInt,
    pub c: BigInt,
}

/// One filling with the measures of its lens space.
///
/// On the wire every integer is a JSON number, unless some integer in the
/// record overflows `i64`; then all of them are decimal strings and
/// `"ints"` is `"string"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputRecord {
    pub p: BigInt,
    pub q: BigInt,
    pub q_canonical: BigInt,
    pub cap: Vec<BigInt>,
    pub tuple: Vec<BigInt>,
    pub b2: BigInt,
    pub pi1: BigInt,
    pub extremal: Option<Extremal>,
    pub len: BigInt,
    pub u: BigInt,
    pub v: BigInt,
}

impl OutputRecord {
    pub fn from_filling(f: &Filling) -> crate::Result<OutputRecord> {
        let m = cf_measures(&f.lens.fraction())?;
        let extremal = extremal_form(f)?.map(|e| Extremal {
            n: e.n,
            d: e.d,
            c: e.c,
        });
        Ok(OutputRecord {
            p: f.lens.p().clone(),
            q: f.lens.q().clone(),
            q_canonical: f.lens.canonical().q().clone(),
            cap: f.cap.coeffs().to_vec(),
            tuple: f.tuple.to_bigints(),
            b2: f.b2.clone(),
            pi1: f.pi1_order.clone(),
            extremal,
            len: BigInt::from(m.len),
            u: m.u,
            v: m.v,
        })
    }

    fn integers(&self) -> impl Iterator<Item = &BigInt> {
        let scalars = [
            &self.p,
            &self.q,
            &self.q_canonical,
            &self.b2,
            &self.pi1,
            &self.len,
            &self.u,
            &self.v,
        ];
        let extremal = self.extremal.iter().flat_map(|e| [&e.n, &e.d, &e.c]);
        scalars
            .into_iter()
            .chain(self.cap.iter())
            .chain(self.tuple.iter())
            .chain(extremal)
    }

    pub fn needs_strings(&self) -> bool {
        !self.integers().all(fits_i64)
    }

    pub fn csv_row(&self) -> Vec<String> {
        let join = |xs: &[BigInt]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(";")
        };
        let ext = |get: fn(&Extremal) -> &BigInt| {
            self.extremal
                .as_ref()
                .map(|e| get(e).to_string())
                .unwrap_or_default()
        };
        vec![
            self.p.to_string(),
            self.q.to_string(),
            self.q_canonical.to_string(),
            join(&self.cap),
            join(&self.tuple),
            self.b2.to_string(),
            self.pi1.to_string(),
            ext(|e| &e.n),
            ext(|e| &e.d),
            ext(|e| &e.c),
            self.len.to_string(),
            self.u.to_string(),
            self.v.to_string(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum IntEncoding {
    Number,
    String,
}

#[derive(Serialize, Deserialize)]
struct ExtremalWire {
    n: WireInt,
    d: WireInt,
    c: WireInt,
}

#[derive(Serialize, Deserialize)]
struct RecordWire {
    schema: u32,
    ints: IntEncoding,
    p: WireInt,
    q: WireInt,
    q_canonical: WireInt,
    cap: Vec<WireInt>,
    tuple: Vec<WireInt>,
    b2: WireInt,
    pi1: WireInt,
    #[serde(default)]
    extremal: Option<ExtremalWire>,
    len: WireInt,
    #[serde(rename = "U")]
    u: WireInt,
    #[serde(rename = "V")]
    v: WireInt,
}

impl Serialize for OutputRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wide = self.needs_strings();
        let enc = |x: &BigInt| WireInt::encode(x, wide);
        let all = |xs: &[BigInt]| xs.iter().map(enc).collect::<Vec<_>>();
        RecordWire {
            schema: SCHEMA_VERSION,
            ints: if wide {
                IntEncoding::String
            } else {
                IntEncoding::Number
            },
            p: enc(&self.p),
            q: enc(&self.q),
            q_canonical: enc(&self.q_canonical),
            cap: all(&self.cap),
            tuple: all(&self.tuple),
            b2: enc(&self.b2),
            pi1: enc(&self.pi1),
            extremal: self.extremal.as_ref().map(|e| ExtremalWire {
                n: enc(&e.n),
                d: enc(&e.d),
                c: enc(&e.c),
            }),
            len: enc(&self.len),
            u: enc(&self.u),
            v: enc(&self.v),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OutputRecord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = RecordWire::deserialize(d)?;
        if w.schema != SCHEMA_VERSION {
            return Err(D::Error::custom(format!(
                "unsupported schema version {}",
                w.schema
            )));
        }
        let dec = |x: &WireInt| x.decode().map_err(D::Error::custom);
        let all = |xs: &[WireInt]| xs.iter().map(dec).collect::<Result<Vec<_>, _>>();
        let extremal = match &w.extremal {
            Some(e) => Some(Extremal {
                n: dec(&e.n)?,
                d: dec(&e.d)?,
                c: dec(&e.c)?,
            }),
            None => None,
        };
        Ok(OutputRecord {
            p: dec(&w.p)?,
            q: dec(&w.q)?,
            q_canonical: dec(&w.q_canonical)?,
            cap: all(&w.cap)?,
            tuple: all(&w.tuple)?,
            b2: dec(&w.b2)?,
            pi1: dec(&w.pi1)?,
            extremal,
            len: dec(&w.len)?,
            u: dec(&w.u)?,
            v: dec(&w.v)?,
        })
    }
}
