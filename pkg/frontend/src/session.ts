/**
 * One live game against the engine.
 *
 * The session is the only stateful piece of the UI: it tracks the position,
 * the move history and whose turn it is, funnels every human move through
 * the server's validation, and asks the engine to reply.  Responses landing
 * after the session has moved on are discarded by sequence number.
 */

import type { EngineApi, SolveResponse } from "./api.js";
import { holdingMove, moveViolation } from "./rules.js";

export type Mover = "human" | "engine";
export type Status = "ongoing" | "human-won" | "engine-won";

export interface HistoryEntry {
  mover: Mover;
  move: number[];
  position: number[];
  note?: string;
}

export interface HintResult {
  outcome: "P" | "N";
  move: number[] | null;
  method: string;
}

export class SessionError extends Error {
  constructor(
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export class GameSession {
  readonly game: string;
  readonly initial: number[];
  moveSets: number[][] = [];
  position: number[];
  history: HistoryEntry[] = [];
  status: Status = "ongoing";
  turn: Mover = "human";
  private seq = 0;
  private busy = false;

  constructor(
    private api: EngineApi,
    game: string,
    initial: number[],
  ) {
    this.game = game;
    this.initial = [...initial];
    this.position = [...initial];
    if (initial.every((v) => v === 0)) {
      // Nothing to play; mover-to-be has already lost.
      this.status = "engine-won";
    }
  }

  async start(): Promise<void> {
    this.moveSets = await this.api.legalSets(this.game);
  }

  /** Replay the history from the initial position; must land on `position`. */
  replayPosition(): number[] {
    let pos = [...this.initial];
    for (const entry of this.history) {
      pos = pos.map((p, i) => p - entry.move[i]);
    }
    return pos;
  }

  consistent(): boolean {
    const replay = this.replayPosition();
    const sameSpot = replay.every((v, i) => v === this.position[i]);
    const terminal = this.position.every((v) => v === 0);
    return sameSpot && (this.status === "ongoing") === !terminal;
  }

  /**
   * Validate and play a human move, then fetch and apply the engine reply.
   * Throws SessionError with the violation code on bad input.
   */
  async submitMove(removals: number[]): Promise<void> {
    if (this.status !== "ongoing") throw new SessionError("GameOver", "the game is over");
    if (this.turn !== "human") throw new SessionError("NotYourTurn", "engine is thinking");
    if (this.busy) throw new SessionError("Busy", "a move is already in flight");
    const mirror = moveViolation(this.moveSets, this.position, removals);
    if (mirror) throw new SessionError(mirror, `move rejected locally: ${mirror}`);
    const seq = ++this.seq;
    this.busy = true;
    try {
      const verdict = await this.api.legal(this.game, this.position, removals);
      if (!verdict.legal) {
        throw new SessionError(verdict.reason ?? "IllegalMove", "server rejected the move");
      }
      const after = await this.api.apply(this.game, this.position, removals);
      if (seq !== this.seq) return; // superseded; drop stale response
      this.history.push({ mover: "human", move: [...removals], position: after });
      this.position = after;
      if (after.every((v) => v === 0)) {
        this.status = "human-won";
        return;
      }
      this.turn = "engine";
      await this.engineReply(seq);
    } finally {
      this.busy = false;
    }
  }

  private async engineReply(seq: number): Promise<void> {
    const solved: SolveResponse = await this.api.solve(this.game, this.position);
    if (seq !== this.seq) return;
    let move = solved.move;
    let note: string | undefined;
    if (move === null) {
      // Engine is in a lost spot: play the canonical first legal move.
      move = holdingMove(this.moveSets, this.position);
      note = "holding move";
      if (move === null) return; // terminal; humans win was already recorded
    } else {
      note = solved.method;
    }
    const after = await this.api.apply(this.game, this.position, move);
    if (seq !== this.seq) return;
    this.history.push({ mover: "engine", move, position: after, note });
    this.position = after;
    if (after.every((v) => v === 0)) {
      this.status = "engine-won";
    } else {
      this.turn = "human";
    }
  }

  /** Ask the engine for a winning move from the current position. */
  async requestHint(): Promise<HintResult> {
    if (this.status !== "ongoing") throw new SessionError("GameOver", "the game is over");
    const solved = await this.api.solve(this.game, this.position);
    return { outcome: solved.outcome, move: solved.move, method: solved.method };
  }
}
