// Build with: wasm-pack build crates/web --target web --out-dir www/pkg
import init, { brolin_points, growth_json, classify } from "./pkg/ratsemi_web.js";

const $ = (id) => document.getElementById(id);

function fail(el, e) {
  el.className = "err";
  el.textContent = String(e);
}

function drawCloud(pts) {
  const canvas = $("b-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  let r = 0;
  for (let i = 0; i < pts.length; i++) r = Math.max(r, Math.abs(pts[i]));
  r = r * 1.05 || 1;
  const s = canvas.width / (2 * r);
  ctx.fillStyle = "rgba(20, 60, 160, 0.35)";
  for (let i = 0; i < pts.length; i += 2) {
    ctx.fillRect((pts[i] + r) * s, (r - pts[i + 1]) * s, 1, 1);
  }
  return r;
}

function runBrolin() {
  const msg = $("b-msg");
  msg.className = "";
  try {
    const t0 = performance.now();
    const pts = brolin_points($("b-map").value, Number($("b-n").value), Number($("b-seed").value));
    const r = drawCloud(pts);
    msg.textContent = `${pts.length / 2} points, |z| ≤ ${(r / 1.05).toFixed(3)}, ${(performance.now() - t0).toFixed(0)} ms`;
  } catch (e) {
    fail(msg, e);
  }
}

function runGrowth() {
  const out = $("g-out");
  out.className = "";
  try {
    const g = JSON.parse(growth_json($("g-gens").value, Number($("g-depth").value)));
    const rows = g.counts.map((c, i) => `<tr><td>${i + 1}</td><td>${c}</td></tr>`).join("");
    let notes = `relations: ${g.relations}`;
    if (g.first_relation) notes += `; first: <code>${g.first_relation}</code>`;
    if (g.truncated_at) notes += `; truncated at length ${g.truncated_at}`;
    if (g.class) notes += `; growth: ${g.class} (slope ${g.slope.toFixed(3)})`;
    out.innerHTML = `<table><tr><th>length</th><th>distinct maps</th></tr>${rows}</table><p>${notes}</p>`;
  } catch (e) {
    fail(out, e);
  }
}

function runClassify() {
  const out = $("c-out");
  out.className = "";
  try {
    out.textContent = classify($("c-map").value);
  } catch (e) {
    fail(out, e);
  }
}

await init();
$("b-run").onclick = runBrolin;
$("g-run").onclick = runGrowth;
$("c-run").onclick = runClassify;
runBrolin();
runGrowth();
runClassify();
