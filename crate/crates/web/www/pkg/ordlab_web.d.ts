/* tslint:disable */
/* eslint-disable */

/**
 * Full classification of `y^m = f(x)` at `p`: Frobenius polynomial,
 * conjugate factors over `Q(sqrt(-d))`, valuations, slopes and mechanism.
 * `model` is `"superelliptic"` (`m = 3`) or `"elliptic"` (`m = 2`).
 */
export function classify(model: string, f: string, d: number, p: number): string;

/**
 * `p`-adic Newton polygon of an integer polynomial whose leading
 * coefficient is a `p`-adic unit.
 */
export function newton(coeffs: string, p: number): string;

/**
 * Complex roots of a monic even-degree integer polynomial over `F_q`,
 * with the exact Weil test and the `q`-adic slopes.
 */
export function weil_roots(coeffs: string, q: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly classify: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly newton: (a: number, b: number, c: number) => [number, number, number, number];
    readonly weil_roots: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
