import init, { parity_bits, coefficients, check_claim, families } from "./pkg/jparity_web.js";

const $ = (id) => document.getElementById(id);

function showError(el, err) {
  el.innerHTML = "";
  const span = document.createElement("span");
  span.className = "fail";
  span.textContent = String(err);
  el.appendChild(span);
}

// Parity map: one row per residue class, one column per block of the progression.
function drawMap() {
  const id = $("map-id").value.trim();
  const m = Math.max(1, Math.min(64, Number($("map-mod").value) | 0));
  const p = Number($("map-p").value) | 0;
  const msg = $("map-msg");
  let bits;
  try {
    bits = parity_bits(id, p);
  } catch (e) {
    showError(msg, e);
    return;
  }
  // bits[0] is the coefficient of q^-1
  const val = -1;
  const cols = Math.ceil((p + 2) / m);
  const canvas = $("map-canvas");
  const cell = Math.max(1, Math.min(12, Math.floor(900 / cols)));
  canvas.width = Math.max(1, cols * cell);
  canvas.height = m * Math.max(cell, 3);
  const rowH = canvas.height / m;
  const ctx = canvas.getContext("2d");
  ctx.fillStyle = "#eee";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  ctx.fillStyle = "#222";
  const odd = new Array(m).fill(0);
  const total = new Array(m).fill(0);
  for (let i = 0; i < bits.length; i++) {
    const n = val + i;
    const r = ((n % m) + m) % m;
    total[r]++;
    if (bits[i]) {
      odd[r]++;
      ctx.fillRect(Math.floor((n - val) / m) * cell, r * rowH, cell, rowH);
    }
  }
  const rows = odd.map((o, r) => `${r}: ${o}/${total[r]}`).join(", ");
  msg.textContent = `odd count per residue class: ${rows}`;
}

function drawClaim(report) {
  const canvas = $("claim-canvas");
  const ctx = canvas.getContext("2d");
  const [lo, hi] = report.interval;
  const span = Math.max(1, hi - lo + 1);
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.fillStyle = "#eee";
  ctx.fillRect(0, 20, canvas.width, 20);
  const x = (n) => ((n - lo) / span) * canvas.width;
  ctx.fillStyle = "#999";
  for (let n = lo + ((report.residue - lo) % report.modulus + report.modulus) % report.modulus; n <= hi; n += report.modulus) {
    ctx.fillRect(x(n), 24, Math.max(1, canvas.width / span), 12);
  }
  ctx.fillStyle = "#1b6e20";
  for (const n of report.witnesses) {
    ctx.fillRect(x(n), 14, Math.max(2, canvas.width / span), 32);
  }
  ctx.fillStyle = "#222";
  ctx.font = "12px system-ui";
  ctx.fillText(String(lo), 2, 58);
  const hiText = String(hi);
  ctx.fillText(hiText, canvas.width - ctx.measureText(hiText).width - 2, 58);
}

function runClaim() {
  const family = $("claim-family").value;
  const t = Number($("claim-t").value) | 0;
  const msg = $("claim-msg");
  let report;
  try {
    report = JSON.parse(check_claim(family, t));
  } catch (e) {
    showError(msg, e);
    return;
  }
  const cls = { PASS: "pass", FAIL: "fail", HYPOTHESIS_SKIPPED: "skip" }[report.verdict];
  msg.innerHTML = "";
  const verdict = document.createElement("span");
  verdict.className = cls;
  verdict.textContent = report.verdict;
  msg.append(
    verdict,
    ` ${report.series}: ${report.expected} coefficient wanted in [${report.interval.join(", ")}] ` +
      `on n = ${report.residue} mod ${report.modulus}; ${report.witnesses.length} witnesses` +
      (report.hypothesis ? `; hypothesis ${report.hypothesis} ${report.hypothesis_holds ? "holds" : "fails"}` : ""),
  );
  drawClaim(report);
  const shown = { ...report, witnesses: report.witnesses.slice(0, 200) };
  $("claim-json").textContent = JSON.stringify(shown, null, 2);
}

function runCoeffs() {
  const out = $("coeff-out");
  try {
    const entry = JSON.parse(coefficients($("coeff-id").value.trim(), Number($("coeff-p").value) | 0));
    out.textContent = entry.coeffs.map((c, i) => `q^${entry.val + i}\t${c}`).join("\n");
  } catch (e) {
    out.textContent = String(e);
  }
}

await init();
const select = $("claim-family");
for (const name of JSON.parse(families())) {
  const opt = document.createElement("option");
  opt.value = opt.textContent = name;
  select.appendChild(opt);
}
select.value = "T42B";
$("map-go").onclick = drawMap;
$("claim-go").onclick = runClaim;
$("coeff-go").onclick = runCoeffs;
drawMap();
runClaim();
runCoeffs();
