/* tslint:disable */
/* eslint-disable */

/**
 * Median-max chordal errors over `10^from ..= 10^to` in CSV form.
 */
export function accuracy_curves(kind: string, axis: string, from: number, to: number, samples: number, n: number, seed: bigint): string;

/**
 * Finite eigenvalues of one formulation as `[re0, im0, re1, im1, ...]`.
 * Infinite and indeterminate eigenvalues are dropped.
 */
export function eigenvalues(kind: string, formulation: string, n: number, kappa_y: number, kappa_sigma: number, seed: bigint): Float64Array;

/**
 * The 4×4 single-value reduction: `[σ, const error, λ error]`, then the
 * four computed eigenvalues as `re, im` pairs, then `|𝒴*𝒜𝒳|` row by row.
 */
export function lemma(kind: string, alpha: number, beta: number, gamma: number): Float64Array;

/**
 * Exact singular values of the generated problem, decreasing.
 */
export function true_sigmas(kind: string, n: number, kappa_y: number, kappa_sigma: number, seed: bigint): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly accuracy_curves: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: bigint) => [number, number, number, number];
    readonly eigenvalues: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: bigint) => [number, number, number, number];
    readonly lemma: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly true_sigmas: (a: number, b: number, c: number, d: number, e: number, f: bigint) => [number, number, number, number];
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
