//! JSON rendering helpers shared by the library types and the CLI.

use num_traits::ToPrimitive;
use serde::Serializer;
use std::fmt::Display;

/// Serializes an integer as a JSON number when it fits in 64 bits, and as a
/// decimal string otherwise.
pub fn big_as_number<S, T>(value: &T, serializer: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
    T: ToPrimitive + Display,
{
    if let Some(v) = value.to_u64() {
        serializer.serialize_u64(v)
    } else if let Some(v) = value.to_i64() {
        serializer.serialize_i64(v)
    } else {
        serializer.collect_str(value)
    }
}

/// Same as [`big_as_number`] for a sequence.
pub fn big_seq_as_numbers<S, T>(values: &[T], serializer: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
    T: ToPrimitive + Display,
{
    use serde::ser::SerializeSeq;
    let mut seq = serializer.serialize_seq(Some(values.len()))?;
    for v in values {
        seq.serialize_element(&Wrapped(v))?;
    }
    seq.end()
}

struct Wrapped<'a, T>(&'a T);

impl<T: ToPrimitive + Display> serde::Serialize for Wrapped<'_, T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        big_as_number(self.0, serializer)
    }
}

/// Pretty-prints a document with a trailing newline.
pub fn render<T: serde::Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("JSON serialization is infallible here");
    out.push('\n');
    out
}
