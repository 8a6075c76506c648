import init, { latin_squares, blowup, edge_copy, dense } from "./pkg/induced_decomp_web.js";

const $ = (id) => document.getElementById(id);

function hue(i, total) {
  return `hsl(${Math.round((360 * i) / Math.max(total, 1))}, 65%, 60%)`;
}

function call(fn, ...args) {
  const v = JSON.parse(fn(...args));
  if (v.error) throw new Error(v.error);
  return v;
}

function report(el, f) {
  el.classList.remove("error");
  try {
    f();
  } catch (e) {
    el.textContent = e.message;
    el.classList.add("error");
  }
}

function showSquares() {
  const out = $("mols-out");
  out.replaceChildren();
  report($("mols-info"), () => {
    const v = call(latin_squares, +$("mols-order").value, +$("mols-count").value);
    $("mols-info").textContent =
      `${v.squares.length} square(s) of order ${v.order}; mutually orthogonal: ${v.mutually_orthogonal}`;
    for (const sq of v.squares) {
      const table = document.createElement("table");
      table.className = "square";
      for (const row of sq.grid) {
        const tr = table.insertRow();
        for (const s of row) {
          const td = tr.insertCell();
          td.textContent = s;
          td.style.background = hue(s - 1, v.order);
        }
      }
      out.append(table);
    }
  });
}

const blow = { data: null, selected: null, picked: [] };

function drawBlowup() {
  const svg = $("blowup-svg");
  svg.replaceChildren();
  const d = blow.data;
  if (!d) return;
  const ns = "http://www.w3.org/2000/svg";
  const parts = d.host.parts;
  const width = +svg.getAttribute("width");
  const height = +svg.getAttribute("height");
  const pos = [];
  let v = 0;
  parts.forEach((size, p) => {
    const x = ((p + 0.5) * width) / parts.length;
    for (let i = 0; i < size; i++) {
      pos[++v] = [x + (p % 2 ? 30 : -30) * Math.sin(i), 15 + ((i + 0.5) * (height - 30)) / size];
    }
  });
  const copies = blow.selected === null ? [] : [blow.selected];
  for (const c of copies) {
    const classes = d.copies[c].classes;
    for (let a = 0; a < classes.length; a++)
      for (let b = a + 1; b < classes.length; b++)
        for (const x of classes[a])
          for (const y of classes[b]) {
            const line = document.createElementNS(ns, "line");
            line.setAttribute("x1", pos[x][0]);
            line.setAttribute("y1", pos[x][1]);
            line.setAttribute("x2", pos[y][0]);
            line.setAttribute("y2", pos[y][1]);
            line.setAttribute("stroke", hue(c, d.copies.length));
            line.setAttribute("stroke-width", 2);
            svg.append(line);
          }
  }
  for (let u = 1; u < pos.length; u++) {
    const dot = document.createElementNS(ns, "circle");
    dot.setAttribute("cx", pos[u][0]);
    dot.setAttribute("cy", pos[u][1]);
    dot.setAttribute("r", pos.length > 120 ? 3 : 6);
    dot.setAttribute("fill", blow.picked.includes(u) ? "#000" : "#888");
    dot.addEventListener("click", () => pickVertex(u));
    const title = document.createElementNS(ns, "title");
    title.textContent = `vertex ${u}`;
    dot.append(title);
    svg.append(dot);
  }
}

function selectCopy(i) {
  blow.selected = i;
  document.querySelectorAll("#blowup-copies button").forEach((b, j) => b.classList.toggle("on", j === i));
  drawBlowup();
}

function pickVertex(u) {
  blow.picked = blow.picked.length === 1 ? [blow.picked[0], u] : [u];
  if (blow.picked.length === 2) {
    report($("blowup-info"), () => {
      const [a, b] = blow.picked;
      const e = call(edge_copy, $("blowup-pattern").value, a, b);
      $("blowup-info").textContent =
        `edge ${a}-${b} lies in copy ${e.copy}, codeword (${e.sequence.join(", ")})`;
      selectCopy(e.copy - 1);
    });
    blow.picked = [];
  }
  drawBlowup();
}

function showBlowup() {
  const list = $("blowup-copies");
  list.replaceChildren();
  blow.data = null;
  blow.selected = null;
  report($("blowup-info"), () => {
    const d = call(blowup, $("blowup-pattern").value);
    blow.data = d;
    $("blowup-info").textContent =
      `K_{${d.host.parts.join(",")}} split into ${d.copies.length} induced copies; verified: ${d.verified}`;
    d.copies.forEach((c, i) => {
      const b = document.createElement("button");
      b.textContent = `(${[...c.codeword.b, ...c.codeword.c].join("")})`;
      b.addEventListener("click", () => selectCopy(i));
      list.append(b);
    });
  });
  drawBlowup();
}

function showDense() {
  const canvas = $("dense-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  report($("dense-info"), () => {
    const v = call(dense, $("dense-pattern").value, +$("dense-n").value);
    const n = v.n;
    const p = v.params;
    $("dense-info").textContent =
      `n = ${n} = ${p.n_prime}·${p.p} + ${p.t}, q = ${p.q}; ${v.copies.length} induced copies; ` +
      `non-edges ${v.bound.lhs} < ${v.bound.rhs}; verified: ${v.verified}`;
    const cell = canvas.width / n;
    v.copies.forEach((c, i) => {
      ctx.fillStyle = hue(i, v.copies.length);
      for (let a = 0; a < c.classes.length; a++)
        for (let b = a + 1; b < c.classes.length; b++)
          for (const x of c.classes[a])
            for (const y of c.classes[b]) {
              ctx.fillRect((x - 1) * cell, (y - 1) * cell, cell, cell);
              ctx.fillRect((y - 1) * cell, (x - 1) * cell, cell, cell);
            }
    });
  });
}

await init();
$("mols-go").addEventListener("click", showSquares);
$("blowup-go").addEventListener("click", showBlowup);
$("dense-go").addEventListener("click", showDense);
showSquares();
showBlowup();
showDense();
