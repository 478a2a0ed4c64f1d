//! Byte-level decoding and encoding of primitive values.

use crate::error::{DfmlError, Result};
use crate::model::{ByteOrder, PrimitiveType};

use super::Value;

/// Decode a primitive from exactly its intrinsic number of bytes.
///
/// Integers are two's-complement at the declared width; `float` and
/// `double` are IEEE 754 binary32/binary64. Strings take the whole
/// slice and must be valid UTF-8.
pub fn decode_primitive(bytes: &[u8], dtype: PrimitiveType, order: ByteOrder) -> Result<Value> {
    if let Some(expect) = dtype.intrinsic_length() {
        if bytes.len() as u64 != expect {
            return Err(DfmlError::invalid(
                "decode",
                format!(
                    "{} needs {expect} bytes, got {}",
                    dtype.tag(),
                    bytes.len()
                ),
            ));
        }
    }
    let value = match dtype {
        PrimitiveType::Byte => Value::Int(bytes[0] as i8 as i64),
        PrimitiveType::Short => Value::Int(match order {
            ByteOrder::BigEndian => i16::from_be_bytes([bytes[0], bytes[1]]),
            ByteOrder::LittleEndian => i16::from_le_bytes([bytes[0], bytes[1]]),
        } as i64),
        PrimitiveType::Integer => Value::Int(match order {
            ByteOrder::BigEndian => i32::from_be_bytes(four(bytes)),
            ByteOrder::LittleEndian => i32::from_le_bytes(four(bytes)),
        } as i64),
        PrimitiveType::Long => Value::Int(match order {
            ByteOrder::BigEndian => i64::from_be_bytes(eight(bytes)),
            ByteOrder::LittleEndian => i64::from_le_bytes(eight(bytes)),
        }),
        PrimitiveType::Float => Value::Float(match order {
            ByteOrder::BigEndian => f32::from_be_bytes(four(bytes)),
            ByteOrder::LittleEndian => f32::from_le_bytes(four(bytes)),
        } as f64),
        PrimitiveType::Double => Value::Float(match order {
            ByteOrder::BigEndian => f64::from_be_bytes(eight(bytes)),
            ByteOrder::LittleEndian => f64::from_le_bytes(eight(bytes)),
        }),
        PrimitiveType::String => Value::Text(
            std::str::from_utf8(bytes)
                .map_err(|_| DfmlError::invalid("decode", "string bytes are not valid UTF-8"))?
                .to_string(),
        ),
        PrimitiveType::Char => {
            if !bytes[0].is_ascii() {
                return Err(DfmlError::invalid("decode", "char byte is not ASCII"));
            }
            Value::Text((bytes[0] as char).to_string())
        }
    };
    Ok(value)
}

/// Inverse of [`decode_primitive`] for in-range values.
pub fn encode_primitive(value: &Value, dtype: PrimitiveType, order: ByteOrder) -> Result<Vec<u8>> {
    let out_of_range = || DfmlError::invalid("encode", format!("value out of range for {}", dtype.tag()));
    let bytes = match (dtype, value) {
        (PrimitiveType::Byte, Value::Int(v)) => {
            vec![i8::try_from(*v).map_err(|_| out_of_range())? as u8]
        }
        (PrimitiveType::Short, Value::Int(v)) => {
            let v = i16::try_from(*v).map_err(|_| out_of_range())?;
            match order {
                ByteOrder::BigEndian => v.to_be_bytes().to_vec(),
                ByteOrder::LittleEndian => v.to_le_bytes().to_vec(),
            }
        }
        (PrimitiveType::Integer, Value::Int(v)) => {
            let v = i32::try_from(*v).map_err(|_| out_of_range())?;
            match order {
                ByteOrder::BigEndian => v.to_be_bytes().to_vec(),
                ByteOrder::LittleEndian => v.to_le_bytes().to_vec(),
            }
        }
        (PrimitiveType::Long, Value::Int(v)) => match order {
            ByteOrder::BigEndian => v.to_be_bytes().to_vec(),
            ByteOrder::LittleEndian => v.to_le_bytes().to_vec(),
        },
        (PrimitiveType::Float, Value::Float(v)) => {
            let v = *v as f32;
            match order {
                ByteOrder::BigEndian => v.to_be_bytes().to_vec(),
                ByteOrder::LittleEndian => v.to_le_bytes().to_vec(),
            }
        }
        (PrimitiveType::Double, Value::Float(v)) => match order {
            ByteOrder::BigEndian => v.to_be_bytes().to_vec(),
            ByteOrder::LittleEndian => v.to_le_bytes().to_vec(),
        },
        (PrimitiveType::String, Value::Text(t)) | (PrimitiveType::Char, Value::Text(t)) => {
            t.as_bytes().to_vec()
        }
        _ => {
            return Err(DfmlError::invalid(
                "encode",
                format!("value kind does not match {}", dtype.tag()),
            ))
        }
    };
    Ok(bytes)
}

fn four(b: &[u8]) -> [u8; 4] {
    [b[0], b[1], b[2], b[3]]
}

fn eight(b: &[u8]) -> [u8; 8] {
    [b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapefile_magic_number_both_orders() {
        // 9994 = 0x270A
        let v = decode_primitive(
            &[0x00, 0x00, 0x27, 0x0A],
            PrimitiveType::Integer,
            ByteOrder::BigEndian,
        )
        .unwrap();
        assert_eq!(v, Value::Int(9994));
        let v = decode_primitive(
            &[0x0A, 0x27, 0x00, 0x00],
            PrimitiveType::Integer,
            ByteOrder::LittleEndian,
        )
        .unwrap();
        assert_eq!(v, Value::Int(9994));
    }

    #[test]
    fn all_zero_double_is_zero() {
        let v = decode_primitive(&[0u8; 8], PrimitiveType::Double, ByteOrder::LittleEndian).unwrap();
        assert_eq!(v, Value::Float(0.0));
    }

    #[test]
    fn one_as_double_little_endian() {
        let bytes = encode_primitive(
            &Value::Float(1.0),
            PrimitiveType::Double,
            ByteOrder::LittleEndian,
        )
        .unwrap();
        assert_eq!(bytes, vec![0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xF0, 0x3F]);
        let back =
            decode_primitive(&bytes, PrimitiveType::Double, ByteOrder::LittleEndian).unwrap();
        assert_eq!(back, Value::Float(1.0));
    }

    #[test]
    fn length_mismatch_rejected() {
        let err = decode_primitive(&[0u8; 3], PrimitiveType::Integer, ByteOrder::BigEndian)
            .unwrap_err();
        assert!(err.to_string().contains("4 bytes"));
    }

    #[test]
    fn byte_is_twos_complement() {
        let v = decode_primitive(&[0xFF], PrimitiveType::Byte, ByteOrder::BigEndian).unwrap();
        assert_eq!(v, Value::Int(-1));
    }
}
