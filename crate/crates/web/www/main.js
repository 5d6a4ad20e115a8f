import init, * as forge from "./pkg/forge_web.js";

const examples = {
  semisimpleGroup: {
    "rotation": "0 1\n-1 0",
    "diag(1, 2)": "1 0\n0 2",
    "diag(1, -1, 1/2)": "1 0 0\n0 -1 0\n0 0 1/2",
    "companion of x^3 - 2": "0 0 2\n1 0 0\n0 1 0",
  },
  nilpotentGroup: {
    "E12": "0 1\n0 0",
    "Heisenberg": "0 1 0\n0 0 0\n0 0 0\n\n0 0 0\n0 0 1\n0 0 0\n\n0 0 1\n0 0 0\n0 0 0",
    "regular nilpotent 4x4": "0 1 0 0\n0 0 1 0\n0 0 0 1\n0 0 0 0",
  },
  jordanDecomposition: {
    "[[1,1,0],[0,1,0],[0,0,2]]": "1 1 0\n0 1 0\n0 0 2",
    "[[2,1],[-1,0]]": "2 1\n-1 0",
  },
};

const $ = (id) => document.getElementById(id);

function fillExamples() {
  const list = examples[$("op").value];
  $("example").replaceChildren(...Object.keys(list).map((name) => new Option(name, name)));
  $("input").value = Object.values(list)[0];
}

function compute() {
  const out = $("output");
  const started = performance.now();
  try {
    out.textContent = forge[$("op").value]($("input").value);
    out.className = "";
  } catch (e) {
    out.textContent = String(e);
    out.className = "error";
  }
  $("status").textContent = `${(performance.now() - started).toFixed(0)} ms`;
}

$("op").addEventListener("change", fillExamples);
$("example").addEventListener("change", () => {
  $("input").value = examples[$("op").value][$("example").value];
});
$("run").addEventListener("click", compute);

await init();
fillExamples();
$("run").disabled = false;
$("status").textContent = "ready";
