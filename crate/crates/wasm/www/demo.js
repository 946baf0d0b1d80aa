import init, { eigenvalue_series, star_series, simulate } from "./pkg/bricklayer_wasm.js";

const PAD = { left: 56, right: 16, top: 14, bottom: 34 };

function niceTicks(lo, hi, count) {
  const span = hi - lo || 1;
  const raw = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= raw);
  const ticks = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push(Number(t.toPrecision(12)));
  }
  return ticks;
}

// series: [{ points: [[x, y], ...], color, dots }]
function plot(canvas, series, xLabel) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width;
  const h = canvas.height;
  ctx.clearRect(0, 0, w, h);
  const all = series.flatMap((s) => s.points);
  if (all.length === 0) return;
  let [x0, x1] = [Math.min(...all.map((p) => p[0])), Math.max(...all.map((p) => p[0]))];
  let [y0, y1] = [Math.min(...all.map((p) => p[1])), Math.max(...all.map((p) => p[1]))];
  if (x0 === x1) x1 = x0 + 1;
  if (y0 === y1) { y0 -= 0.5; y1 += 0.5; }
  const yPad = (y1 - y0) * 0.05;
  y0 -= yPad;
  y1 += yPad;
  const sx = (x) => PAD.left + ((x - x0) / (x1 - x0)) * (w - PAD.left - PAD.right);
  const sy = (y) => h - PAD.bottom - ((y - y0) / (y1 - y0)) * (h - PAD.top - PAD.bottom);

  ctx.strokeStyle = "#ddd";
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  ctx.lineWidth = 1;
  ctx.textAlign = "right";
  for (const t of niceTicks(y0, y1, 6)) {
    ctx.beginPath();
    ctx.moveTo(PAD.left, sy(t));
    ctx.lineTo(w - PAD.right, sy(t));
    ctx.stroke();
    ctx.fillText(String(t), PAD.left - 6, sy(t) + 4);
  }
  ctx.textAlign = "center";
  for (const t of niceTicks(x0, x1, 8)) {
    ctx.fillText(String(t), sx(t), h - PAD.bottom + 16);
  }
  ctx.fillText(xLabel, (PAD.left + w - PAD.right) / 2, h - 4);

  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.fillStyle = s.color;
    if (s.dots) {
      for (const [x, y] of s.points) {
        ctx.beginPath();
        ctx.arc(sx(x), sy(y), 2.5, 0, 2 * Math.PI);
        ctx.fill();
      }
    } else {
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      s.points.forEach(([x, y], i) => (i === 0 ? ctx.moveTo(sx(x), sy(y)) : ctx.lineTo(sx(x), sy(y))));
      ctx.stroke();
    }
  }
}

function guarded(outId, body) {
  const out = document.getElementById(outId);
  try {
    out.classList.remove("error");
    out.textContent = body();
  } catch (e) {
    out.classList.add("error");
    out.textContent = String(e);
  }
}

const num = (id) => Number(document.getElementById(id).value);

function runSeries() {
  guarded("series-out", () => {
    const points = JSON.parse(eigenvalue_series(num("series-n")));
    plot(
      document.getElementById("series-plot"),
      [
        { points: points.map((p) => [p.n, p.log2_n]), color: "#d62728" },
        { points: points.map((p) => [p.n, p.lambda]), color: "#1f77b4", dots: true },
      ],
      "n",
    );
    const closest = points
      .filter((p) => !Number.isInteger(Math.log2(p.n)))
      .reduce((best, p) => (!best || p.log2_n - p.lambda < best.log2_n - best.lambda ? p : best), null);
    const worst = Math.max(...points.map((p) => p.lambda - p.log2_n));
    const lines = [`max λ - log2 n over the range: ${worst.toExponential(2)}${worst > 1e-9 ? " (bound exceeded)" : ""}`];
    if (closest) lines.push(`tightest non-power of two: n = ${closest.n}, margin ${(closest.log2_n - closest.lambda).toFixed(6)}`);
    return lines.join("\n");
  });
}

function runStar() {
  guarded("star-out", () => {
    const data = JSON.parse(star_series(num("star-n")));
    plot(
      document.getElementById("star-plot"),
      [
        { points: data.points.map((p) => [p.n, p.log2_n]), color: "#d62728" },
        { points: data.points.map((p) => [p.n, p.star]), color: "#2ca02c" },
      ],
      "n",
    );
    return data.first_star_win === null
      ? "the star stays at or below log2 n in this range"
      : `the star first beats log2 n at n = ${data.first_star_win}`;
  });
}

function runSim() {
  guarded("sim-out", () => {
    const spec = document.getElementById("sim-graph").value;
    const s = JSON.parse(simulate(spec, num("sim-mu"), num("sim-f"), num("sim-t")));
    const gens = s.points.map((p) => p.generation);
    plot(
      document.getElementById("sim-plot"),
      [
        { points: [[gens[0], s.predicted_robustness], [gens[gens.length - 1], s.predicted_robustness]], color: "#d62728" },
        { points: s.points.map((p) => [p.generation, p.robustness]), color: "#1f77b4" },
      ],
      "generation",
    );
    const last = s.points[s.points.length - 1];
    return [
      `${s.order} genotypes in H(${s.d}, ${s.a}), λ = ${s.lambda.toFixed(9)}`,
      `robustness ${last.robustness.toFixed(9)} (limit ${s.predicted_robustness.toFixed(9)})`,
      `growth factor ${last.growth.toFixed(12)} (limit ${s.predicted_growth.toFixed(12)})`,
    ].join("\n");
  });
}

await init();
document.getElementById("series-run").addEventListener("click", runSeries);
document.getElementById("star-run").addEventListener("click", runStar);
document.getElementById("sim-run").addEventListener("click", runSim);
runSeries();
runStar();
runSim();
