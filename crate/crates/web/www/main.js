import init, { groupNames, classes, characterTable, findIsomorphisms } from "./pkg/centrum_web.js";

const $ = (id) => document.getElementById(id);

function cell(tag, text) {
  const el = document.createElement(tag);
  el.textContent = text;
  return el;
}

function grid(header, rows) {
  const table = document.createElement("table");
  const head = table.insertRow();
  header.forEach((h) => head.appendChild(cell("th", h)));
  rows.forEach((r) => {
    const tr = table.insertRow();
    r.forEach((v) => tr.appendChild(cell("td", v)));
  });
  return table;
}

function show(out, f) {
  out.replaceChildren();
  try {
    f(out);
  } catch (e) {
    const p = cell("p", e.message ?? String(e));
    p.className = "error";
    out.appendChild(p);
  }
}

function renderTable(out) {
  const r = JSON.parse(characterTable($("table-group").value));
  const d = r.data;
  out.appendChild(cell("p", `order ${r.groups[0].order}, ${r.groups[0].classes} classes, values in Q(ζ_${d.conductor})`));
  const header = ["", ...d.class_sizes.map((s, i) => `${s}·[${d.class_orders[i]}]`)];
  out.appendChild(grid(header, d.rows.map((row, l) => [`χ${l}`, ...row])));
}

function renderClasses(out) {
  const r = JSON.parse(classes($("classes-group").value));
  const rows = r.data.classes.map((c) => [c.index, c.size, c.order, c.inverse, c.elements.join(" ")]);
  out.appendChild(grid(["class", "size", "order", "inverse", "elements"], rows));
}

function renderIso(out) {
  const budget = BigInt($("iso-budget").value || "1");
  const r = JSON.parse(findIsomorphisms($("iso-src").value, $("iso-dst").value, budget));
  const space = r.search_space;
  const summary = space
    ? `${space.degree_pruned} permutations after degree prunes, ${space.visited} visited, ${r.candidates.length} integral isomorphisms`
    : r.checks[0].name;
  out.appendChild(cell("p", summary));
  if (r.candidates.length > 0) {
    const rows = r.candidates.map((c) => [c.sigma.join(" "), c.monomial ? "yes" : "no", c.normalized ? "yes" : "no"]);
    out.appendChild(grid(["σ", "monomial", "normalized"], rows));
    const failed = r.checks.filter((c) => c.verdict !== "pass");
    out.appendChild(cell("p", `${r.checks.length} checks, ${failed.length} failed`));
    out.appendChild(cell("pre", JSON.stringify(r.candidates[0], null, 1)));
  }
}

await init();
const list = $("names");
JSON.parse(groupNames()).forEach((n) => {
  const o = document.createElement("option");
  o.value = n;
  list.appendChild(o);
});
$("table-run").onclick = () => show($("table-out"), renderTable);
$("classes-run").onclick = () => show($("classes-out"), renderClasses);
$("iso-run").onclick = () => show($("iso-out"), renderIso);
