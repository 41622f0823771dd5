import init, { classify, sweepLast, witness } from "./pkg/lme_wasm.js";

const $ = (id) => document.getElementById(id);

function guard(out, fn) {
  try {
    out.classList.remove("err");
    fn();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
  }
}

function fmtVec(v) {
  return "(" + v.join(", ") + ")";
}

function runClassify() {
  const out = $("cls-out");
  guard(out, () => {
    const r = JSON.parse(classify($("cls-dims").value));
    const lines = [
      `dims      ${fmtVec(r.dims)}`,
      `quotient  ${r.status}`,
      `Delta     ${r.delta}`,
      `R         ${r.r}`,
      `g_max     ${r.gmax}`,
      `hyperdet  ${r.hyperdet_nonzero ? "nonzero" : "vanishes"}`,
      `degrees   ${r.invariant_degrees.join(", ") || "none <= 120"}`,
      "",
      "castling path:",
      ...r.recursion.steps.map((s) => "  " + fmtVec(s)),
      `  terminal ${r.recursion.case}, D = ${r.recursion.d_value}`,
      r.agree ? "closed form and recursion agree" : "MISMATCH between closed form and recursion",
    ];
    out.textContent = lines.join("\n");
  });
}

function runSweep() {
  const note = $("sw-note");
  guard(note, () => {
    const r = JSON.parse(sweepLast($("sw-prefix").value, Number($("sw-max").value)));
    drawSweep($("sw-plot"), r);
    note.textContent =
      `P = ${r.p}. Line: Delta; dots: quotient dimension D (red = empty, black = point, blue = positive).`;
  });
}

function drawSweep(canvas, r) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, pad = 40;
  ctx.clearRect(0, 0, W, H);
  const pts = r.points;
  const xs = pts.map((p) => p.last);
  const ys = pts.flatMap((p) => [p.delta, p.d]);
  const x0 = Math.min(...xs), x1 = Math.max(...xs);
  const y0 = Math.min(...ys, -2), y1 = Math.max(...ys, 1);
  const sx = (x) => pad + ((x - x0) / Math.max(1, x1 - x0)) * (W - 2 * pad);
  const sy = (y) => H - pad - ((y - y0) / Math.max(1, y1 - y0)) * (H - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, sy(0));
  ctx.lineTo(W - pad, sy(0));
  ctx.stroke();
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.moveTo(pad, sy(-2));
  ctx.lineTo(W - pad, sy(-2));
  ctx.stroke();
  ctx.setLineDash([]);

  for (const [value, label] of [[r.p / 2, "P/2"], [r.p, "P"]]) {
    if (value >= x0 && value <= x1) {
      ctx.strokeStyle = "#cc8";
      ctx.beginPath();
      ctx.moveTo(sx(value), pad);
      ctx.lineTo(sx(value), H - pad);
      ctx.stroke();
      ctx.fillStyle = "#886";
      ctx.fillText(label, sx(value) + 3, pad + 10);
    }
  }

  ctx.strokeStyle = "#444";
  ctx.beginPath();
  pts.forEach((p, i) => (i ? ctx.lineTo(sx(p.last), sy(p.delta)) : ctx.moveTo(sx(p.last), sy(p.delta))));
  ctx.stroke();

  for (const p of pts) {
    ctx.fillStyle = p.d < 0 ? "#c22" : p.d === 0 ? "#000" : "#26c";
    ctx.beginPath();
    ctx.arc(sx(p.last), sy(p.d), 3, 0, 2 * Math.PI);
    ctx.fill();
  }

  ctx.fillStyle = "#333";
  ctx.fillText(`last entry ${x0} .. ${x1}`, pad, H - 10);
  ctx.fillText(`${y1}`, 5, sy(y1) + 4);
  ctx.fillText(`${y0}`, 5, sy(y0) + 4);
}

function runWitness() {
  const out = $("wit-out");
  const maps = $("wit-maps");
  guard(out, () => {
    const r = JSON.parse(
      witness($("wit-dims").value, Number($("wit-seed").value), Number($("wit-restarts").value)),
    );
    out.textContent = [
      `dims       ${fmtVec(r.dims)}`,
      `predicted  ${r.predicted}`,
      `found      ${r.succeeded ? "yes" : "no"}`,
      `residual   ${r.residual.toExponential(3)}`,
      `restarts   ${r.restarts_used} (best #${r.best_restart}), ${r.iterations_total} iterations`,
    ].join("\n");
    maps.replaceChildren(...r.marginals.map((m, i) => heatmap(m, i)));
  });
}

function heatmap(m, i) {
  const cell = Math.max(12, Math.floor(160 / m.dim));
  const canvas = document.createElement("canvas");
  canvas.width = canvas.height = cell * m.dim;
  const ctx = canvas.getContext("2d");
  for (let r = 0; r < m.dim; r++) {
    for (let c = 0; c < m.dim; c++) {
      const mag = Math.hypot(m.re[r][c], m.im[r][c]) * m.dim; // 1 on the diagonal when maximally mixed
      const shade = Math.round(255 * (1 - Math.min(1, mag)));
      ctx.fillStyle = `rgb(${shade},${shade},255)`;
      ctx.fillRect(c * cell, r * cell, cell, cell);
    }
  }
  const fig = document.createElement("figure");
  const cap = document.createElement("figcaption");
  cap.textContent = `|rho_${i + 1}| dev ${m.deviation.toExponential(1)}`;
  fig.append(canvas, cap);
  return fig;
}

await init();
$("cls-run").onclick = runClassify;
$("sw-run").onclick = runSweep;
$("wit-run").onclick = runWitness;
runClassify();
runSweep();
