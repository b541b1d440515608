/**
 * Typed client for the engine's stateless JSON endpoints.
 *
 * Every call carries the full game id and position, so the client owns all
 * session state and requests can be retried or reordered freely.
 */

export type Outcome = "P" | "N";

export interface GameInfo {
  id: string;
  n: number;
  move_sets: number[][];
  description: string;
  solved: boolean;
}

export interface SolveResponse {
  game: string;
  position: number[];
  outcome: Outcome;
  move: number[] | null;
  resulting_position: number[] | null;
  method: string;
}

export interface ClassifyResponse {
  game: string;
  position: number[];
  outcome: Outcome;
  method: string;
}

export interface LegalResponse {
  legal: boolean;
  reason?: string;
}

export interface EngineApi {
  games(): Promise<GameInfo[]>;
  legalSets(game: string): Promise<number[][]>;
  classify(game: string, position: number[]): Promise<ClassifyResponse>;
  solve(game: string, position: number[]): Promise<SolveResponse>;
  legal(game: string, position: number[], move: number[]): Promise<LegalResponse>;
  apply(game: string, position: number[], move: number[]): Promise<number[]>;
}

export class EngineError extends Error {
  constructor(
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function post<T>(base: string, path: string, body: unknown): Promise<T> {
  const resp = await fetch(base + path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  const data = await resp.json();
  if (!resp.ok) {
    throw new EngineError(data.code ?? "Error", data.message ?? resp.statusText);
  }
  return data as T;
}

export function createClient(base = ""): EngineApi {
  return {
    async games() {
      const resp = await fetch(base + "/api/games");
      const data = await resp.json();
      return data.games as GameInfo[];
    },
    async legalSets(game) {
      const data = await post<{ move_sets: number[][] }>(base, "/api/legal-sets", { game });
      return data.move_sets;
    },
    classify: (game, position) => post(base, "/api/classify", { game, position }),
    solve: (game, position) => post(base, "/api/solve", { game, position }),
    legal: (game, position, move) => post(base, "/api/legal", { game, position, move }),
    async apply(game, position, move) {
      const data = await post<{ position: number[] }>(base, "/api/apply", {
        game,
        position,
        move,
      });
      return data.position;
    },
  };
}
