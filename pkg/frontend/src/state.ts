/**
 * Experiment-state codec: the URL-safe blob shared with the backend.
 *
 * Layout (little-endian, 49 bytes, prefixed by the version character "1"):
 *   u8 family kind | f64 a | f64 b | u8 free flag | f64 free |
 *   u8 target type | u16 target | u8 derived | u16 samples | u8 style |
 *   u64 palette seed | f64 speed
 * Equal states encode to identical strings; floats survive bit-exactly.
 */

export const FAMILY_KINDS = [
  "confocal",
  "incircle",
  "circumcircle",
  "homothetic",
  "dual",
  "excentral",
  "generic",
] as const;
export type FamilyKind = (typeof FAMILY_KINDS)[number];

export const DERIVED_KINDS = [
  "reference",
  "medial",
  "orthic",
  "excentral",
  "intouch",
] as const;
export type DerivedKind = (typeof DERIVED_KINDS)[number];

export const STYLE_MODES = ["wireframe", "dark_thick", "region_fill"] as const;
export type StyleMode = (typeof STYLE_MODES)[number];

export interface ExperimentState {
  familyKind: FamilyKind;
  a: number;
  b: number;
  free: number | null;
  center: number | null;
  vertex: number | null;
  derived: DerivedKind;
  samples: number;
  styleMode: StyleMode;
  paletteSeed: bigint;
  speed: number;
}

export class CodecError extends Error {
  constructor(
    readonly code: "CorruptBlob" | "UnsupportedVersion" | "OutOfRange",
    message: string,
  ) {
    super(message);
  }
}

export const SCHEMA_VERSION = "1";
const BODY_SIZE = 49;
const MAX_SAMPLES = 65535;

export function defaultState(): ExperimentState {
  return {
    familyKind: "confocal",
    a: 2.0,
    b: 1.0,
    free: null,
    center: 1,
    vertex: null,
    derived: "reference",
    samples: 720,
    styleMode: "wireframe",
    paletteSeed: 0n,
    speed: 1.0,
  };
}

export function validateState(s: ExperimentState): void {
  const bad = (msg: string) => {
    throw new CodecError("OutOfRange", msg);
  };
  if (!Number.isFinite(s.a) || s.a <= 0 || !Number.isFinite(s.b) || s.b <= 0) {
    bad(`semi-axes must be finite and positive, got (${s.a}, ${s.b})`);
  }
  if (s.familyKind === "generic") {
    if (s.free === null || !Number.isFinite(s.free) || s.free <= 0 || s.free >= s.a) {
      bad("generic family needs free in (0, a)");
    }
  } else if (s.familyKind === "circumcircle") {
    if (Math.abs(s.a - s.b) > 1e-12 * Math.max(s.a, s.b)) {
      bad("circumcircle family needs a = b");
    }
    if (s.free !== null && (!Number.isFinite(s.free) || s.free <= 0 || s.free >= 1)) {
      bad("circumcircle free parameter must lie in (0, 1)");
    }
  } else if (s.free !== null) {
    bad(`family ${s.familyKind} takes no free parameter`);
  }
  if ((s.center === null) === (s.vertex === null)) {
    bad("exactly one of center or vertex must be set");
  }
  if (s.center !== null && (!Number.isInteger(s.center) || s.center < 1 || s.center > MAX_SAMPLES)) {
    bad(`center index out of range: ${s.center}`);
  }
  if (s.vertex !== null && ![1, 2, 3].includes(s.vertex)) {
    bad(`vertex index must be 1..3, got ${s.vertex}`);
  }
  if (!Number.isInteger(s.samples) || s.samples < 16 || s.samples > MAX_SAMPLES) {
    bad(`samples must lie in [16, ${MAX_SAMPLES}], got ${s.samples}`);
  }
  if (s.paletteSeed < 0n || s.paletteSeed >= 1n << 64n) {
    bad("palette seed must fit an unsigned 64-bit integer");
  }
  if (!Number.isFinite(s.speed) || s.speed <= 0) {
    bad(`animation speed must be finite and positive, got ${s.speed}`);
  }
}

const B64 = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";
const B64_INDEX = new Map([...B64].map((c, i) => [c, i] as const));

function toBase64Url(bytes: Uint8Array): string {
  let out = "";
  for (let i = 0; i < bytes.length; i += 3) {
    const b0 = bytes[i]!;
    const b1 = bytes[i + 1];
    const b2 = bytes[i + 2];
    out += B64[b0 >> 2]!;
    out += B64[((b0 & 3) << 4) | ((b1 ?? 0) >> 4)]!;
    if (b1 === undefined) break;
    out += B64[((b1 & 15) << 2) | ((b2 ?? 0) >> 6)]!;
    if (b2 === undefined) break;
    out += B64[b2 & 63]!;
  }
  return out;
}

function fromBase64Url(text: string): Uint8Array {
  if (text.length % 4 === 1) {
    throw new CodecError("CorruptBlob", "truncated base64url payload");
  }
  const quanta: number[] = [];
  for (const ch of text) {
    const v = B64_INDEX.get(ch);
    if (v === undefined) {
      throw new CodecError("CorruptBlob", `invalid base64url character ${ch}`);
    }
    quanta.push(v);
  }
  const out = new Uint8Array(Math.floor((quanta.length * 3) / 4));
  let o = 0;
  for (let i = 0; i + 1 < quanta.length; i += 4) {
    const [q0, q1, q2, q3] = [quanta[i]!, quanta[i + 1]!, quanta[i + 2], quanta[i + 3]];
    out[o++] = (q0 << 2) | (q1 >> 4);
    if (q2 === undefined) break;
    out[o++] = ((q1 & 15) << 4) | (q2 >> 2);
    if (q3 === undefined) break;
    out[o++] = ((q2 & 3) << 6) | q3;
  }
  return out;
}

export function encodeState(s: ExperimentState): string {
  validateState(s);
  const body = new Uint8Array(BODY_SIZE);
  const view = new DataView(body.buffer);
  view.setUint8(0, FAMILY_KINDS.indexOf(s.familyKind));
  view.setFloat64(1, s.a, true);
  view.setFloat64(9, s.b, true);
  view.setUint8(17, s.free === null ? 0 : 1);
  view.setFloat64(18, s.free ?? 0.0, true);
  view.setUint8(26, s.center !== null ? 0 : 1);
  view.setUint16(27, s.center ?? s.vertex ?? 0, true);
  view.setUint8(29, DERIVED_KINDS.indexOf(s.derived));
  view.setUint16(30, s.samples, true);
  view.setUint8(32, STYLE_MODES.indexOf(s.styleMode));
  view.setBigUint64(33, s.paletteSeed, true);
  view.setFloat64(41, s.speed, true);
  return SCHEMA_VERSION + toBase64Url(body);
}

export function decodeState(blob: string): ExperimentState {
  if (!blob) {
    throw new CodecError("CorruptBlob", "empty state blob");
  }
  const version = blob[0]!;
  if (version !== SCHEMA_VERSION) {
    if (version >= "0" && version <= "9") {
      throw new CodecError("UnsupportedVersion", `state schema version ${version} not supported`);
    }
    throw new CodecError("CorruptBlob", `unrecognized version byte ${version}`);
  }
  const body = fromBase64Url(blob.slice(1));
  if (body.length !== BODY_SIZE) {
    throw new CodecError("CorruptBlob", `state body has ${body.length} bytes, expected ${BODY_SIZE}`);
  }
  const view = new DataView(body.buffer);
  const kindIndex = view.getUint8(0);
  const derivedIndex = view.getUint8(29);
  const styleIndex = view.getUint8(32);
  const freeFlag = view.getUint8(17);
  const targetType = view.getUint8(26);
  if (kindIndex >= FAMILY_KINDS.length) {
    throw new CodecError("OutOfRange", `family kind ordinal ${kindIndex} out of range`);
  }
  if (derivedIndex >= DERIVED_KINDS.length) {
    throw new CodecError("OutOfRange", `derived kind ordinal ${derivedIndex} out of range`);
  }
  if (styleIndex >= STYLE_MODES.length) {
    throw new CodecError("OutOfRange", `style mode ordinal ${styleIndex} out of range`);
  }
  if (freeFlag > 1 || targetType > 1) {
    throw new CodecError("OutOfRange", "invalid flag byte");
  }
  const target = view.getUint16(27, true);
  const state: ExperimentState = {
    familyKind: FAMILY_KINDS[kindIndex]!,
    a: view.getFloat64(1, true),
    b: view.getFloat64(9, true),
    free: freeFlag ? view.getFloat64(18, true) : null,
    center: targetType === 0 ? target : null,
    vertex: targetType === 1 ? target : null,
    derived: DERIVED_KINDS[derivedIndex]!,
    samples: view.getUint16(30, true),
    styleMode: STYLE_MODES[styleIndex]!,
    paletteSeed: view.getBigUint64(33, true),
    speed: view.getFloat64(41, true),
  };
  validateState(state);
  return state;
}

/** The `#s=<blob>` fragment convention used in share URLs. */
export function fragmentFor(state: ExperimentState): string {
  return `s=${encodeState(state)}`;
}

export function stateFromFragment(fragment: string | null | undefined): ExperimentState | null {
  if (!fragment) return null;
  const raw = fragment.startsWith("#") ? fragment.slice(1) : fragment;
  const match = /(?:^|&)s=([^&]+)/.exec(raw);
  if (!match) return null;
  return decodeState(match[1]!);
}
