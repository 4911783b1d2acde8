//! JSON with every float written to 17 significant digits.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

/// The trait defaults give compact output; floats use `{:.16e}`. Non-finite values
/// become `null`.
struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

pub fn to_line<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    value.serialize(&mut Serializer::with_formatter(&mut buf, Sig17))?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// One JSON document per line, each line newline-terminated.
pub fn to_lines<'a, T: Serialize + 'a>(values: impl IntoIterator<Item = &'a T>) -> serde_json::Result<String> {
    let mut out = String::new();
    for v in values {
        out.push_str(&to_line(v)?);
        out.push('\n');
    }
    Ok(out)
}
