/**
 * Client-side mirror of the server's move validation.
 *
 * Used only to reject obviously bad input before a round trip; the server
 * stays authoritative and every submitted move is still checked there.
 */

export type Violation =
  | "DimensionMismatch"
  | "NoTokensRemoved"
  | "Overdraw"
  | "UnsupportedSupport";

export function moveViolation(
  moveSets: number[][],
  position: number[],
  removals: number[],
): Violation | null {
  const maxVertex = Math.max(...moveSets.flat());
  if (removals.length !== position.length) return "DimensionMismatch";
  if (position.length <= maxVertex) return "DimensionMismatch";
  if (!removals.some((r) => r > 0)) return "NoTokensRemoved";
  if (removals.some((r, i) => r < 0 || r > position[i])) return "Overdraw";
  const support = removals.flatMap((r, i) => (r > 0 ? [i] : []));
  const covered = moveSets.some((set) => support.every((v) => set.includes(v)));
  return covered ? null : "UnsupportedSupport";
}

/** Move sets that could still cover the currently selected stacks. */
export function compatibleSets(moveSets: number[][], support: number[]): number[] {
  const out: number[] = [];
  moveSets.forEach((set, idx) => {
    if (support.every((v) => set.includes(v))) out.push(idx);
  });
  return out;
}

/**
 * The engine's canonical first legal move: first move set holding any
 * tokens, one token off its last non-empty stack.  Matches the server's
 * enumeration order (set index, then lexicographic removals), and is what
 * the engine plays as a "holding move" when it is lost anyway.
 */
export function holdingMove(moveSets: number[][], position: number[]): number[] | null {
  for (const set of moveSets) {
    const playable = set.filter((v) => position[v] > 0);
    if (playable.length === 0) continue;
    const move = position.map(() => 0);
    move[playable[playable.length - 1]] = 1;
    return move;
  }
  return null;
}
