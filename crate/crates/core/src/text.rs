//! Text files for keys and ciphertexts.
//!
//! Each file starts with one header line
//! `type=<sk|pk|evk|rotk|ct> level=<l> scale=<int> k=<exp|->`
//! followed by ring elements in their own text form: one for `sk` (`s`), two
//! for the others (`b` then `a`, or `c0` then `c1`). Keys are written with
//! `level=L scale=1`; only rotation keys carry `k`.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::params::CkksParams;
use crate::ring::RingElement;
use crate::scheme::{Ciphertext, EvaluationKey, PublicKey, RotationKey, SecretKey};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtifactKind {
    SecretKey,
    PublicKey,
    EvaluationKey,
    RotationKey,
    Ciphertext,
}

impl ArtifactKind {
    pub fn tag(self) -> &'static str {
        match self {
            Self::SecretKey => "sk",
            Self::PublicKey => "pk",
            Self::EvaluationKey => "evk",
            Self::RotationKey => "rotk",
            Self::Ciphertext => "ct",
        }
    }
}

impl FromStr for ArtifactKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sk" => Self::SecretKey,
            "pk" => Self::PublicKey,
            "evk" => Self::EvaluationKey,
            "rotk" => Self::RotationKey,
            "ct" => Self::Ciphertext,
            other => return Err(Error::parse(format!("unknown artifact type {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Artifact {
    SecretKey(SecretKey),
    PublicKey(PublicKey),
    EvaluationKey(EvaluationKey),
    RotationKey(RotationKey),
    Ciphertext(Ciphertext),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Header {
    kind: ArtifactKind,
    level: usize,
    scale: BigInt,
    k: Option<i64>,
}

impl Header {
    fn parse(line: &str) -> Result<Self> {
        let mut kind = None;
        let mut level = None;
        let mut scale = None;
        let mut k = None;
        for field in line.split_whitespace() {
            let (name, value) = field
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("bad header field {field:?}")))?;
            let bad = || Error::parse(format!("bad header value {field:?}"));
            match name {
                "type" => kind = Some(value.parse::<ArtifactKind>()?),
                "level" => level = Some(value.parse::<usize>().map_err(|_| bad())?),
                "scale" => scale = Some(value.parse::<BigInt>().map_err(|_| bad())?),
                "k" => {
                    k = Some(match value {
                        "-" => None,
                        v => Some(v.parse::<i64>().map_err(|_| bad())?),
                    })
                }
                _ => return Err(Error::parse(format!("unknown header field {name:?}"))),
            }
        }
        let missing = |f: &str| Error::parse(format!("header lacks {f}="));
        Ok(Self {
            kind: kind.ok_or_else(|| missing("type"))?,
            level: level.ok_or_else(|| missing("level"))?,
            scale: scale.ok_or_else(|| missing("scale"))?,
            k: k.ok_or_else(|| missing("k"))?,
        })
    }

    fn render(&self) -> String {
        let k = self.k.map_or_else(|| "-".to_string(), |k| k.to_string());
        format!(
            "type={} level={} scale={} k={k}",
            self.kind.tag(),
            self.level,
            self.scale
        )
    }
}

impl Artifact {
    pub fn kind(&self) -> ArtifactKind {
        match self {
            Self::SecretKey(_) => ArtifactKind::SecretKey,
            Self::PublicKey(_) => ArtifactKind::PublicKey,
            Self::EvaluationKey(_) => ArtifactKind::EvaluationKey,
            Self::RotationKey(_) => ArtifactKind::RotationKey,
            Self::Ciphertext(_) => ArtifactKind::Ciphertext,
        }
    }

    /// Serializes; `params` supplies the level written for keys.
    pub fn to_text(&self, params: &CkksParams) -> String {
        let key_header = |kind, k| Header {
            kind,
            level: params.levels,
            scale: BigInt::one(),
            k,
        };
        let (header, parts): (Header, Vec<&RingElement>) = match self {
            Self::SecretKey(sk) => (key_header(ArtifactKind::SecretKey, None), vec![&sk.s]),
            Self::PublicKey(pk) => (
                key_header(ArtifactKind::PublicKey, None),
                vec![&pk.b, &pk.a],
            ),
            Self::EvaluationKey(evk) => (
                key_header(ArtifactKind::EvaluationKey, None),
                vec![&evk.b, &evk.a],
            ),
            Self::RotationKey(rk) => (
                key_header(ArtifactKind::RotationKey, Some(rk.k)),
                vec![&rk.b, &rk.a],
            ),
            Self::Ciphertext(c) => (
                Header {
                    kind: ArtifactKind::Ciphertext,
                    level: c.level,
                    scale: c.scale.clone(),
                    k: None,
                },
                vec![&c.c0, &c.c1],
            ),
        };
        let mut out = header.render();
        out.push('\n');
        for p in parts {
            write!(out, "{p}").expect("writing to a String cannot fail");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = Header::parse(lines.next().ok_or_else(|| Error::parse("empty file"))?)?;
        let first = RingElement::read_lines(&mut lines)?;
        let second = match header.kind {
            ArtifactKind::SecretKey => None,
            _ => Some(RingElement::read_lines(&mut lines)?),
        };
        if let Some(extra) = lines.next() {
            return Err(Error::parse(format!("trailing content {extra:?}")));
        }
        let need_k = header.kind == ArtifactKind::RotationKey;
        if need_k != header.k.is_some() {
            return Err(Error::parse(format!(
                "k= must be set exactly for rotation keys (type={})",
                header.kind.tag()
            )));
        }
        Ok(match (header.kind, second) {
            (ArtifactKind::SecretKey, _) => Self::SecretKey(SecretKey { s: first }),
            (ArtifactKind::PublicKey, Some(a)) => Self::PublicKey(PublicKey { b: first, a }),
            (ArtifactKind::EvaluationKey, Some(a)) => {
                Self::EvaluationKey(EvaluationKey { b: first, a })
            }
            (ArtifactKind::RotationKey, Some(a)) => Self::RotationKey(RotationKey {
                k: header.k.expect("checked above"),
                b: first,
                a,
            }),
            (ArtifactKind::Ciphertext, Some(c1)) => Self::Ciphertext(Ciphertext {
                c0: first,
                c1,
                level: header.level,
                scale: header.scale,
            }),
            (_, None) => unreachable!("two-part artifacts read a second element"),
        })
    }

    fn mismatch(self, want: ArtifactKind) -> Error {
        Error::parse(format!(
            "expected a {} file, found {}",
            want.tag(),
            self.kind().tag()
        ))
    }

    pub fn into_secret_key(self) -> Result<SecretKey> {
        match self {
            Self::SecretKey(k) => Ok(k),
            other => Err(other.mismatch(ArtifactKind::SecretKey)),
        }
    }

    pub fn into_public_key(self) -> Result<PublicKey> {
        match self {
            Self::PublicKey(k) => Ok(k),
            other => Err(other.mismatch(ArtifactKind::PublicKey)),
        }
    }

    pub fn into_evaluation_key(self) -> Result<EvaluationKey> {
        match self {
            Self::EvaluationKey(k) => Ok(k),
            other => Err(other.mismatch(ArtifactKind::EvaluationKey)),
        }
    }

    pub fn into_rotation_key(self) -> Result<RotationKey> {
        match self {
            Self::RotationKey(k) => Ok(k),
            other => Err(other.mismatch(ArtifactKind::RotationKey)),
        }
    }

    pub fn into_ciphertext(self) -> Result<Ciphertext> {
        match self {
            Self::Ciphertext(c) => Ok(c),
            other => Err(other.mismatch(ArtifactKind::Ciphertext)),
        }
    }
}
