/** Page wiring: game picker, board, move entry, hints and the move log. */

import { createClient, type GameInfo } from "./api.js";
import { compatibleSets } from "./rules.js";
import { GameSession, SessionError } from "./session.js";
import { BOARD_H, BOARD_W, renderBoard } from "./render.js";

const api = createClient("");

const gamePicker = document.getElementById("game-picker") as HTMLSelectElement;
const positionInput = document.getElementById("position-input") as HTMLInputElement;
const startButton = document.getElementById("start-game") as HTMLButtonElement;
const hintButton = document.getElementById("hint-button") as HTMLButtonElement;
const submitButton = document.getElementById("submit-move") as HTMLButtonElement;
const clearButton = document.getElementById("clear-move") as HTMLButtonElement;
const statusBanner = document.getElementById("status-banner") as HTMLDivElement;
const messageBox = document.getElementById("message-box") as HTMLDivElement;
const setChips = document.getElementById("set-chips") as HTMLDivElement;
const historyList = document.getElementById("history-list") as HTMLOListElement;
const svg = document.getElementById("board") as unknown as SVGSVGElement;

svg.setAttribute("viewBox", `0 0 ${BOARD_W} ${BOARD_H}`);

let games: GameInfo[] = [];
let session: GameSession | null = null;
let removals: number[] = [];
let hint: number[] | null = null;
let highlightSet: number[] | null = null;

function say(text: string, kind: "info" | "error" = "info"): void {
  messageBox.textContent = text;
  messageBox.className = kind;
}

function redraw(): void {
  if (!session) return;
  renderBoard(
    svg,
    {
      gameId: session.game,
      moveSets: session.moveSets,
      position: session.position,
      removals,
      hint,
      highlightSet,
      interactive: session.status === "ongoing" && session.turn === "human",
    },
    { onAdjust: adjust },
  );
  const status =
    session.status === "ongoing"
      ? session.turn === "human"
        ? "your turn"
        : "engine thinking"
      : session.status === "human-won"
        ? "you took the last token — you win!"
        : "engine took the last token — engine wins";
  statusBanner.textContent = `${session.game} · ${status}`;
  statusBanner.className = session.status;
  hintButton.disabled = session.status !== "ongoing";
  submitButton.disabled = session.status !== "ongoing" || session.turn !== "human";

  setChips.innerHTML = "";
  const support = removals.flatMap((r, i) => (r > 0 ? [i] : []));
  const usable = compatibleSets(session.moveSets, support);
  session.moveSets.forEach((set, idx) => {
    const chip = document.createElement("button");
    chip.className = "chip" + (usable.includes(idx) ? "" : " chip-dead");
    chip.textContent = "{" + set.join(",") + "}";
    chip.addEventListener("mouseenter", () => {
      highlightSet = set;
      redraw();
    });
    chip.addEventListener("mouseleave", () => {
      highlightSet = null;
      redraw();
    });
    setChips.appendChild(chip);
  });
  if (support.length > 0 && usable.length === 0) {
    say("selected stacks fit no move set", "error");
  }

  historyList.innerHTML = "";
  session.history.forEach((entry) => {
    const item = document.createElement("li");
    const note = entry.note ? ` (${entry.note})` : "";
    item.textContent = `${entry.mover} takes [${entry.move.join(",")}] -> ${entry.position.join(",")}${note}`;
    historyList.appendChild(item);
  });
}

function adjust(stack: number, delta: number): void {
  if (!session || session.turn !== "human" || session.status !== "ongoing") return;
  const next = removals[stack] + delta;
  if (next < 0 || next > session.position[stack]) return;
  removals[stack] = next;
  hint = null;
  say("");
  redraw();
}

async function startGame(): Promise<void> {
  const gameId = gamePicker.value;
  const parsed = positionInput.value
    .split(",")
    .map((part) => Number.parseInt(part.trim(), 10));
  if (parsed.some((v) => Number.isNaN(v) || v < 0)) {
    say("position must be comma-separated non-negative integers", "error");
    return;
  }
  const info = games.find((g) => g.id === gameId);
  if (info && parsed.length !== info.n) {
    say(`${gameId} needs ${info.n} stacks`, "error");
    return;
  }
  session = new GameSession(api, gameId, parsed);
  await session.start();
  removals = parsed.map(() => 0);
  hint = null;
  say("");
  redraw();
}

async function submitMove(): Promise<void> {
  if (!session) return;
  try {
    const mv = [...removals];
    await session.submitMove(mv);
    removals = session.position.map(() => 0);
    hint = null;
    say("");
  } catch (err) {
    if (err instanceof SessionError) {
      say(`move rejected: ${err.code}`, "error");
    } else {
      say(String(err), "error");
    }
  }
  redraw();
}

async function requestHint(): Promise<void> {
  if (!session) return;
  try {
    const res = await session.requestHint();
    if (res.move === null) {
      hint = null;
      say("no winning move exists — any move loses to perfect play");
    } else {
      hint = res.move;
      say(`hint via ${res.method}: take [${res.move.join(",")}]`);
    }
  } catch (err) {
    say(String(err), "error");
  }
  redraw();
}

async function boot(): Promise<void> {
  games = await api.games();
  gamePicker.innerHTML = "";
  for (const g of games) {
    const opt = document.createElement("option");
    opt.value = g.id;
    opt.textContent = `${g.id} — ${g.description}${g.solved ? "" : " (brute force)"}`;
    gamePicker.appendChild(opt);
  }
  gamePicker.value = "cn:5,2";
  positionInput.value = "3,8,5,9,6";
  startButton.addEventListener("click", () => void startGame());
  submitButton.addEventListener("click", () => void submitMove());
  hintButton.addEventListener("click", () => void requestHint());
  clearButton.addEventListener("click", () => {
    if (!session) return;
    removals = session.position.map(() => 0);
    hint = null;
    say("");
    redraw();
  });
  await startGame();
}

void boot();
