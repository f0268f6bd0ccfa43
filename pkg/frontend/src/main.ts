import { ApiClient } from "./api";
import { MEMBER_STYLES } from "./colors";
import { buildDualGroup, buildPrimalGroup, ViewPane } from "./scene";
import { SessionState, SessionStore } from "./state";
import { SolveMethod } from "./types";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const store = new SessionStore(new ApiClient());
const primalPane = new ViewPane($("primal-pane"));
const dualPane = new ViewPane($("dual-pane"));

let slidersBuilt = false;
let primalBuilt = false;
let lastShownSolve: unknown = null;

function buildSliders(state: SessionState): void {
  const holder = $("sliders");
  holder.innerHTML = "";
  for (const slider of state.sliders) {
    const row = document.createElement("div");
    row.className = "slider-row";
    const label = document.createElement("label");
    label.textContent = `edge of face ${slider.faceId}`;
    const input = document.createElement("input");
    input.type = "range";
    input.min = "-3";
    input.max = "3";
    input.step = "0.05";
    input.value = String(slider.value);
    input.dataset.column = String(slider.column);
    const value = document.createElement("span");
    value.textContent = slider.value.toFixed(2);
    value.className = "slider-value";
    input.addEventListener("input", () => {
      value.textContent = Number(input.value).toFixed(2);
      store.setSlider(slider.column, Number(input.value));
    });
    row.append(label, input, value);
    holder.appendChild(row);
  }
  const note = document.createElement("p");
  note.className = "hint";
  note.textContent = state.sliders.length
    ? `${state.sliders.length} independent edge length(s); sliders drive the rref solve`
    : "no independent edges";
  holder.appendChild(note);
}

function render(state: SessionState): void {
  const banner = $("banner");
  const badge = $("badge");
  const status = $("status");

  if (state.phase === "blocked") {
    banner.textContent = state.error ?? "cannot reach the solver service";
    banner.style.display = "block";
    return;
  }
  banner.style.display = "none";

  if (state.complex && state.analysis && !primalBuilt) {
    primalBuilt = true;
    const w = state.complex.counts.working;
    $("info").textContent =
      `${state.complex.role} diagram | v=${w.v} e'=${w.e} f'=${w.f} c'=${w.c} | ` +
      `rank ${state.analysis.rank}, dof ${state.analysis.dof}`;
    primalPane.show(buildPrimalGroup(state.complex), true);
    const anchorSel = $("anchor") as HTMLSelectElement;
    anchorSel.innerHTML = "";
    for (const cid of state.complex.active.cell_ids) {
      const opt = document.createElement("option");
      opt.value = String(cid);
      opt.textContent = `cell ${cid}`;
      anchorSel.appendChild(opt);
    }
  }
  if (state.sliders.length && !slidersBuilt) {
    slidersBuilt = true;
    buildSliders(state);
  }

  const err = $("error");
  if (state.error) {
    err.textContent = state.error;
    err.style.display = "block";
  } else {
    err.style.display = "none";
  }

  badge.style.display = state.degraded ? "inline-block" : "none";
  status.textContent = state.solving ? "solving..." : "";

  if (state.displayed && state.displayed !== lastShownSolve) {
    const first = lastShownSolve === null;
    lastShownSolve = state.displayed;
    dualPane.show(buildDualGroup(state.displayed), first);
    const r = state.displayed.residuals;
    $("residuals").textContent =
      `|Aq| ${r.equilibrium.toExponential(1)} | closure ${r.closure.toExponential(1)}`;
  }
}

function wireControls(): void {
  const methodSel = $("method") as HTMLSelectElement;
  methodSel.addEventListener("change", () => {
    store.setMethod(methodSel.value as SolveMethod);
    const rref = methodSel.value === "rref";
    $("sliders")
      .querySelectorAll("input")
      .forEach((i) => ((i as HTMLInputElement).disabled = !rref));
  });
  const anchorSel = $("anchor") as HTMLSelectElement;
  anchorSel.addEventListener("change", () => store.setAnchor(Number(anchorSel.value)));

  const legend = $("legend");
  for (const [name, style] of Object.entries(MEMBER_STYLES)) {
    const item = document.createElement("span");
    item.className = "legend-item";
    item.innerHTML =
      `<span class="swatch${style.dashed ? " dashed" : ""}" ` +
      `style="background:${style.color}"></span>${name}`;
    legend.appendChild(item);
  }
}

store.subscribe(render);
wireControls();
void store.load();
