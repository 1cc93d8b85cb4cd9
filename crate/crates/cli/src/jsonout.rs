//! JSON emitter with full-precision numbers.
//!
//! Every float is printed with 17 significant digits (`{:.16e}`), enough to
//! round-trip `f64` exactly, so re-parsing a document reproduces the
//! in-memory value bit for bit.

use num_complex::Complex64;

#[derive(Debug, Clone)]
pub enum Val {
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<Val>),
    Obj(Vec<(String, Val)>),
}

impl Val {
    pub fn complex(z: Complex64) -> Val {
        Val::Arr(vec![Val::Num(z.re), Val::Num(z.im)])
    }

    pub fn complex_row(row: &[Complex64]) -> Val {
        Val::Arr(row.iter().map(|&z| Val::complex(z)).collect())
    }

    pub fn usize(v: usize) -> Val {
        Val::Int(v as i64)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            Val::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Val::Int(i) => out.push_str(&i.to_string()),
            Val::Num(x) => out.push_str(&fmt_f64(*x)),
            Val::Str(s) => {
                out.push('"');
                for ch in s.chars() {
                    match ch {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Val::Arr(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            Val::Obj(fields) => {
                out.push('{');
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    Val::Str(key.clone()).write(out);
                    out.push(':');
                    value.write(out);
                }
                out.push('}');
            }
        }
    }
}

/// 17 significant digits; exact round trip for every finite `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}
