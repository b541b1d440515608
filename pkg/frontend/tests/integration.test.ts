/**
 * End-to-end checks against a live engine server.
 *
 * Spawns `python -m setnim.cli serve` on a scratch port, then drives the
 * same client/session code the browser uses (node 20 supplies fetch).
 */

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { createClient } from "../src/api.js";
import { holdingMove, moveViolation } from "../src/rules.js";
import { GameSession, SessionError } from "../src/session.js";

const PORT = 8741;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
const api = createClient(BASE);

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 120; attempt++) {
    try {
      const resp = await fetch(`${BASE}/api/games`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("engine server did not come up on " + BASE);
}

beforeAll(async () => {
  server = spawn("python3", ["-m", "setnim.cli", "serve", "--port", String(PORT)], {
    stdio: "ignore",
  });
  await waitForServer();
}, 40_000);

afterAll(() => {
  server?.kill();
});

describe("live engine", () => {
  it("serves the game catalog the picker needs", async () => {
    const games = await api.games();
    const ids = games.map((g) => g.id);
    expect(ids).toContain("cn:5,2");
    expect(ids).toContain("pn:5,3");
  });

  it("hints a move at (3,8,5,9,6) whose result the server classifies P", async () => {
    const session = new GameSession(api, "cn:5,2", [3, 8, 5, 9, 6]);
    await session.start();
    const hint = await session.requestHint();
    expect(hint.outcome).toBe("N");
    expect(hint.move).not.toBeNull();
    const landing = session.position.map((p, i) => p - hint.move![i]);
    const verdict = await api.classify("cn:5,2", landing);
    expect(verdict.outcome).toBe("P");
  });

  it("plays a full game to zero and flips the status", async () => {
    const session = new GameSession(api, "cn:5,2", [3, 8, 5, 9, 6]);
    await session.start();
    for (let round = 0; round < 200 && session.status === "ongoing"; round++) {
      const hint = await session.requestHint();
      const move = hint.move ?? holdingMove(session.moveSets, session.position);
      if (!move) break;
      await session.submitMove(move);
      expect(session.consistent()).toBe(true);
    }
    // The start position is N and the human follows the oracle, so the
    // human takes the last token.
    expect(session.status).toBe("human-won");
    expect(session.position.every((v) => v === 0)).toBe(true);
    expect(session.consistent()).toBe(true);
  });

  it("loses gracefully from a P position: engine takes the last token", async () => {
    const session = new GameSession(api, "pn:3,2", [1, 0, 2]);
    await session.start();
    await session.submitMove([1, 0, 0]); // leaves (0,0,2); server answers into P = 0
    expect(session.status).toBe("engine-won");
    expect(session.consistent()).toBe(true);
  });

  it("rejects the two-ends move in pn:5,3 on both sides", async () => {
    const session = new GameSession(api, "pn:5,3", [1, 1, 1, 1, 1]);
    await session.start();
    // Client-side mirror refuses before any round trip.
    expect(moveViolation(session.moveSets, session.position, [1, 0, 0, 0, 1])).toBe(
      "UnsupportedSupport",
    );
    await expect(session.submitMove([1, 0, 0, 0, 1])).rejects.toThrowError(SessionError);
    // The server is just as firm when asked directly.
    const verdict = await api.legal("pn:5,3", [1, 1, 1, 1, 1], [1, 0, 0, 0, 1]);
    expect(verdict.legal).toBe(false);
    expect(verdict.reason).toBe("UnsupportedSupport");
    expect(session.history).toHaveLength(0);
  });

  it("surfaces engine errors as typed failures", async () => {
    await expect(api.classify("wat:9", [1])).rejects.toMatchObject({ code: "UnknownId" });
  });
});
