import init, { classify_grid, cohomology_table, moduli_report } from "./pkg/p3bundles_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseInt($(id).value, 10);

function fail(target, err) {
  target.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = String(err);
  target.appendChild(p);
}

function table(rows, header, cell) {
  const t = document.createElement("table");
  const head = t.insertRow();
  head.appendChild(document.createElement("th")).textContent = header.corner;
  for (const c of rows[0]) head.appendChild(document.createElement("th")).textContent = c.b;
  for (const row of rows) {
    const tr = t.insertRow();
    tr.appendChild(document.createElement("th")).textContent = row[0].a;
    for (const c of row) cell(tr.insertCell(), c);
  }
  return t;
}

function drawGrid() {
  const out = $("grid-out");
  try {
    const grid = JSON.parse(classify_grid(num("grid-rank"), num("grid-k"), num("grid-max")));
    out.replaceChildren(table(grid.rows, { corner: "a \\ b" }, (td, c) => {
      td.className = c.status;
      td.textContent = c.status === "Stable" ? "S" : c.status === "Unknown" ? "?" : "";
      td.title = `${c.status}: ${c.reason}`;
    }));
  } catch (e) {
    fail(out, e);
  }
}

function drawCohom() {
  const out = $("cohom-out");
  const which = $("cohom-i").value;
  try {
    const t = JSON.parse(cohomology_table(num("cohom-k"), num("cohom-r")));
    out.replaceChildren(table(t.rows, { corner: "a \\ b" }, (td, c) => {
      td.textContent = c[which];
      td.title = `h0=${c.h0} h1=${c.h1} h2=${c.h2}`;
    }));
  } catch (e) {
    fail(out, e);
  }
}

function drawModuli() {
  try {
    const r = JSON.parse(moduli_report(num("mod-rank"), num("mod-k"), num("mod-a"), num("mod-b")));
    $("mod-out").textContent = JSON.stringify(r, null, 2);
  } catch (e) {
    $("mod-out").textContent = String(e);
  }
}

await init();
for (const id of ["grid-rank", "grid-k", "grid-max"]) $(id).addEventListener("input", drawGrid);
for (const id of ["cohom-k", "cohom-r", "cohom-i"]) $(id).addEventListener("input", drawCohom);
for (const id of ["mod-rank", "mod-k", "mod-a", "mod-b"]) $(id).addEventListener("input", drawModuli);
drawGrid();
drawCohom();
drawModuli();
