/** DOM wiring: control panel, canvas, badge, share/download buttons. */

import { ApiClient } from "./api";
import { badgeText, targetLabel } from "./badge";
import { drawView, TrianglePlayer } from "./canvas";
import { AppController } from "./controller";
import { encodeState, FAMILY_KINDS, DERIVED_KINDS, STYLE_MODES, type FamilyKind } from "./state";

const api = new ApiClient();

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text) node.textContent = text;
  return node;
}

function labeled(label: string, input: HTMLElement): HTMLElement {
  const wrap = el("label", { class: "control" });
  wrap.append(el("span", {}, label), input);
  return wrap;
}

async function boot(): Promise<void> {
  const root = document.getElementById("app")!;
  const canvas = el("canvas", { width: "760", height: "560", class: "view" });
  const ctx = canvas.getContext("2d")!;
  const badge = el("div", { class: "badge" }, "loading…");
  const dropped = el("div", { class: "dropped" });
  const panel = el("div", { class: "panel" });
  root.append(panel, badge, dropped, canvas);

  const player = new TrianglePlayer(api);

  const controller = new AppController({
    api,
    writeFragment: (fragment) => {
      window.history.replaceState(null, "", `#${fragment}`);
    },
    onLocus: (locus, state) => {
      badge.textContent = badgeText(targetLabel(state), locus.classification.kind);
      dropped.textContent =
        locus.dropped_samples > 0 ? `${locus.dropped_samples} degenerate samples dropped` : "";
      player.reset();
      player.ensureNext(state);
    },
    onError: (error) => {
      badge.textContent = `error: ${error instanceof Error ? error.message : String(error)}`;
    },
  });

  // -- controls ---------------------------------------------------------
  const familySelect = el("select");
  for (const kind of FAMILY_KINDS) familySelect.append(el("option", { value: kind }, kind));

  const aspect = el("input", {
    type: "range", min: "1.001", max: "5", step: "0.001", value: "2",
  });
  const aspectReadout = el("span", { class: "readout" }, "a = 2.000");

  const freeSlider = el("input", {
    type: "range", min: "0.05", max: "0.95", step: "0.01", value: "0.6",
  });
  const freeWrap = labeled("free", freeSlider);

  const centerSelect = el("select");
  const vertexSelect = el("select");
  vertexSelect.append(el("option", { value: "" }, "center…"));
  for (const i of [1, 2, 3]) vertexSelect.append(el("option", { value: `${i}` }, `vertex ${i}`));

  const derivedSelect = el("select");
  for (const kind of DERIVED_KINDS) derivedSelect.append(el("option", { value: kind }, kind));

  const samplesInput = el("input", { type: "number", min: "16", max: "65535", value: "720" });
  const styleSelect = el("select");
  for (const mode of STYLE_MODES) styleSelect.append(el("option", { value: mode }, mode));
  const seedInput = el("input", { type: "number", min: "0", value: "0" });
  const speedInput = el("input", { type: "number", min: "0.05", step: "0.05", value: "1" });
  const playButton = el("button", {}, "play");
  const shareButton = el("button", {}, "share");
  const downloadButton = el("button", {}, "download SVG");

  panel.append(
    labeled("family", familySelect),
    labeled("aspect a (b = 1)", aspect), aspectReadout,
    freeWrap,
    labeled("center", centerSelect),
    labeled("vertex", vertexSelect),
    labeled("derived", derivedSelect),
    labeled("samples", samplesInput),
    labeled("style", styleSelect),
    labeled("palette seed", seedInput),
    labeled("speed", speedInput),
    playButton, shareButton, downloadButton,
  );

  const centers = await api.centers();
  for (const { k, name } of centers) {
    centerSelect.append(el("option", { value: `${k}` }, `X${k} ${name}`));
  }

  const syncControls = (): void => {
    const s = controller.state;
    familySelect.value = s.familyKind;
    aspect.value = `${s.a}`;
    aspectReadout.textContent = `a = ${s.a.toFixed(3)}`;
    aspect.disabled = s.familyKind === "circumcircle";
    freeWrap.style.display =
      s.familyKind === "generic" || s.familyKind === "circumcircle" ? "" : "none";
    if (s.free !== null) {
      freeSlider.value = s.familyKind === "generic" ? `${s.free / s.a}` : `${s.free}`;
    }
    centerSelect.value = s.center !== null ? `${s.center}` : "";
    vertexSelect.value = s.vertex !== null ? `${s.vertex}` : "";
    derivedSelect.value = s.derived;
    samplesInput.value = `${s.samples}`;
    styleSelect.value = s.styleMode;
    seedInput.value = `${s.paletteSeed}`;
    speedInput.value = `${s.speed}`;
  };

  familySelect.addEventListener("change", () => {
    const kind = familySelect.value as FamilyKind;
    if (kind === "circumcircle") {
      controller.update({ familyKind: kind, a: 1, b: 1, free: 0.6 });
    } else if (kind === "generic") {
      controller.update({ familyKind: kind, b: 1, free: 0.6 * controller.state.a });
    } else {
      controller.update({ familyKind: kind, b: 1, free: null });
    }
    syncControls();
  });
  aspect.addEventListener("input", () => {
    const a = Number(aspect.value);
    const s = controller.state;
    const free = s.familyKind === "generic" ? Number(freeSlider.value) * a : s.free;
    controller.update({ a, free });
    aspectReadout.textContent = `a = ${a.toFixed(3)}`;
  });
  freeSlider.addEventListener("input", () => {
    const f = Number(freeSlider.value);
    const s = controller.state;
    controller.update({ free: s.familyKind === "generic" ? f * s.a : f });
  });
  centerSelect.addEventListener("change", () => {
    controller.setCenter(Number(centerSelect.value));
    syncControls();
  });
  vertexSelect.addEventListener("change", () => {
    if (vertexSelect.value) controller.setVertex(Number(vertexSelect.value));
    syncControls();
  });
  derivedSelect.addEventListener("change", () => {
    controller.update({ derived: derivedSelect.value as never });
  });
  samplesInput.addEventListener("change", () => {
    controller.update({ samples: Number(samplesInput.value) });
  });
  styleSelect.addEventListener("change", () => {
    controller.update({ styleMode: styleSelect.value as never });
  });
  seedInput.addEventListener("change", () => {
    controller.update({ paletteSeed: BigInt(seedInput.value || "0") });
  });
  speedInput.addEventListener("change", () => {
    controller.update({ speed: Number(speedInput.value) });
  });
  playButton.addEventListener("click", () => {
    player.playing = !player.playing;
    playButton.textContent = player.playing ? "pause" : "play";
    if (player.playing) player.ensureNext(controller.state);
  });
  shareButton.addEventListener("click", () => {
    const url = `${location.origin}${location.pathname}#${controller.shareFragment()}`;
    void navigator.clipboard.writeText(url);
    shareButton.textContent = "copied!";
    setTimeout(() => (shareButton.textContent = "share"), 1200);
  });
  downloadButton.addEventListener("click", () => {
    void api.renderSvg(encodeState(controller.state)).then((svg) => {
      const blob = new Blob([svg], { type: "image/svg+xml" });
      const a = el("a", { href: URL.createObjectURL(blob), download: "locus.svg" });
      a.click();
      URL.revokeObjectURL(a.href);
    });
  });

  window.addEventListener("hashchange", () => {
    controller.initFromFragment(location.hash);
    syncControls();
  });

  controller.initFromFragment(location.hash);
  syncControls();

  let last = performance.now();
  const frame = (now: number): void => {
    player.tick((now - last) / 1000, controller.state);
    last = now;
    drawView(ctx, {
      state: controller.state,
      points: controller.points,
      triangle: player.current(),
      familyGeometry: controller.familyGeometry,
    });
    requestAnimationFrame(frame);
  };
  requestAnimationFrame(frame);
}

void boot();
