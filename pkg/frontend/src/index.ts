/**
 * Client bindings for the subarch service.
 *
 * An architecture is opened once and queried through an opaque handle; the
 * handle owns a server-side resource and every method after close() throws.
 * All computation happens server-side, so results are identical to the
 * native CLI's JSON output for the same inputs.
 */

import { HttpClient, ServiceError, UsageError } from "./client.js";

export { ServiceError, UsageError } from "./client.js";

export interface ArchitectureDefinition {
  name: string;
  num_qubits: number;
  edges: [number, number][];
  labels?: string[];
  source?: string;
}

export interface HandleInfo {
  handle: string;
  name: string;
  num_qubits: number;
  num_edges: number;
  diameter: number;
  content_hash: string;
}

export interface Subarchitecture {
  vertices: number[];
  size: number;
  class_key: string;
  edges: [number, number][];
}

export interface CensusRow {
  size: number;
  connected: number;
  classes: number;
}

export interface CensusResult {
  name: string;
  num_qubits: number;
  rows: CensusRow[];
  connected: number;
  non_isomorphic: number;
}

export interface CandidatesResult {
  size: number;
  members: Subarchitecture[];
  provenance: string[][];
  added_qubit_bound: number;
}

export interface OptimalResult {
  size: number;
  members: Subarchitecture[];
  member_qubits: number;
}

export interface CoverResult {
  size: number;
  max_elements: number;
  members: Subarchitecture[];
  member_sizes: number[];
  covered_by: number[][];
}

export interface OracleResult {
  swap_count: number;
  exact: boolean;
  initial_assignment: number[];
  schedule: (string | number)[][];
}

export type Gate = [number, number];

export interface MinimumSwapsOptions {
  qubits?: number;
  budget?: number;
}

export interface CoverOptions {
  timeLimit?: number;
  jobs?: number;
}

export function circuitText(gates: Gate[], qubits?: number): string {
  const count =
    qubits ?? (gates.length ? Math.max(...gates.flat()) + 1 : 0);
  const lines = [`qubits ${count}`];
  for (const [a, b] of gates) lines.push(`cx ${a} ${b}`);
  return lines.join("\n") + "\n";
}

export class ArchitectureHandle {
  #client: HttpClient;
  #handle: string | null;
  readonly info: HandleInfo;

  constructor(client: HttpClient, info: HandleInfo) {
    this.#client = client;
    this.#handle = info.handle;
    this.info = info;
  }

  get closed(): boolean {
    return this.#handle === null;
  }

  #path(suffix = ""): string {
    if (this.#handle === null) {
      throw new UsageError("architecture handle is closed");
    }
    return `/architectures/${this.#handle}${suffix}`;
  }

  async census(jobs?: number): Promise<CensusResult> {
    return this.#client.request(this.#path("/census"), { query: { jobs } });
  }

  async candidates(size: number): Promise<CandidatesResult> {
    return this.#client.request(this.#path("/candidates"), { query: { size } });
  }

  async optimalCandidates(size: number): Promise<OptimalResult> {
    return this.#client.request(this.#path("/optimal"), { query: { size } });
  }

  async cover(size: number, maxElements: number, options: CoverOptions = {}): Promise<CoverResult> {
    return this.#client.request(this.#path("/cover"), {
      method: "POST",
      body: {
        size,
        max_elements: maxElements,
        time_limit: options.timeLimit,
        jobs: options.jobs ?? 1,
      },
    });
  }

  async mapCircuit(circuit: string, budget?: number): Promise<OracleResult> {
    return this.#client.request(this.#path("/oracle"), {
      method: "POST",
      body: { circuit, budget },
    });
  }

  /** Exact minimum swap count for a list of two-qubit interactions. */
  async minimumSwaps(gates: Gate[], options: MinimumSwapsOptions = {}): Promise<number> {
    const result = await this.mapCircuit(
      circuitText(gates, options.qubits),
      options.budget,
    );
    return result.swap_count;
  }

  async dot(highlight: number[] = []): Promise<string> {
    return this.#client.request(this.#path("/dot"), {
      query: { highlight: highlight.join(",") },
    });
  }

  async close(): Promise<void> {
    const path = this.#path();
    this.#handle = null;
    await this.#client.request(path, { method: "DELETE" });
  }
}

export class SubarchClient {
  #client: HttpClient;

  constructor(baseUrl: string) {
    this.#client = new HttpClient(baseUrl);
  }

  async version(): Promise<string> {
    const body = await this.#client.request<{ version: string }>("/health");
    return body.version;
  }

  async devices(): Promise<string[]> {
    const body = await this.#client.request<{ devices: string[] }>("/devices");
    return body.devices;
  }

  /** Open an architecture from an inline definition or a bundled device name. */
  async openArchitecture(
    source: ArchitectureDefinition | { device: string },
  ): Promise<ArchitectureHandle> {
    const body =
      "device" in source ? { device: source.device } : { definition: source };
    const info = await this.#client.request<HandleInfo>("/architectures", {
      method: "POST",
      body,
    });
    return new ArchitectureHandle(this.#client, info);
  }
}

export function connect(baseUrl: string): SubarchClient {
  return new SubarchClient(baseUrl);
}
