// Browser entry point: builds the page, loads images, and wires the canvas,
// ruler, and filter widgets to the controller. Everything it shows comes
// from the HTTP API of the service that hosts this bundle.

import { BricolageApi } from "./api.js";
import { Controller } from "./controller.js";
import { attachCanvasInteractions } from "./interactions.js";
import { renderCanvas, type LoadedImage, type RenderedItem } from "./render.js";
import { sampleToColor } from "./color.js";
import { Store, isEmptyFilter } from "./state.js";
import { showToast } from "./toast.js";
import { bestRegionCrop } from "./textures.js";
import type { ColorSampleWire } from "./types.js";
import { ColorWheel, type SampleFill } from "./widgets/wheel.js";
import { Ruler } from "./widgets/ruler.js";
import { SizeFilter } from "./widgets/sizes.js";
import { Timeline } from "./widgets/timeline.js";
import { Tooltip } from "./widgets/tooltip.js";

const CANVAS_W = 960;
const CANVAS_H = 620;

class ImageStore {
  private cache = new Map<string, LoadedImage | null>();

  constructor(
    private readonly urlFor: (id: string, kind: "cover" | "spine") => string,
    private readonly onLoad: () => void,
  ) {}

  get(id: string, kind: "cover" | "spine"): LoadedImage | null {
    const key = `${kind}:${id}`;
    if (this.cache.has(key)) return this.cache.get(key) ?? null;
    this.cache.set(key, null);
    const img = new Image();
    img.onload = () => {
      this.cache.set(key, {
        source: img,
        width: img.naturalWidth,
        height: img.naturalHeight,
      });
      this.onLoad();
    };
    img.onerror = () => this.cache.set(key, null);
    img.src = this.urlFor(id, kind);
    return null;
  }

  /** RGBA pixels of a loaded cover, for texture crops. */
  pixels(id: string): { width: number; height: number; data: Uint8ClampedArray } | null {
    const loaded = this.get(id, "cover");
    if (!loaded) return null;
    const canvas = document.createElement("canvas");
    canvas.width = loaded.width;
    canvas.height = loaded.height;
    const ctx = canvas.getContext("2d");
    if (!ctx) return null;
    ctx.drawImage(loaded.source as CanvasImageSource, 0, 0);
    const data = ctx.getImageData(0, 0, loaded.width, loaded.height);
    return { width: data.width, height: data.height, data: data.data };
  }
}

function buildShell(root: HTMLElement): Record<string, HTMLElement> {
  root.innerHTML = `
    <header class="topbar">
      <h1>bricolage</h1>
      <nav>
        <button id="mode-shelf">shelf</button>
        <button id="mode-pile">pile</button>
        <button id="regroup-color">piles by color</button>
      </nav>
      <span id="summary"></span>
    </header>
    <main class="workspace">
      <div class="canvas-wrap">
        <canvas id="canvas" width="${CANVAS_W}" height="${CANVAS_H}"></canvas>
        <div id="no-matches" class="no-matches" style="display:none">no matches</div>
        <div id="ruler-slot"></div>
      </div>
      <aside class="panel">
        <h2>color</h2><div id="wheel-slot"></div>
        <h2>years</h2><div id="timeline-slot"></div>
        <h2>sizes</h2><div id="sizes-slot"></div>
      </aside>
    </main>
    <div id="toast-slot"></div>
  `;
  const get = (id: string) => root.querySelector<HTMLElement>(`#${id}`)!;
  return {
    canvas: get("canvas"),
    noMatches: get("no-matches"),
    rulerSlot: get("ruler-slot"),
    wheelSlot: get("wheel-slot"),
    timelineSlot: get("timeline-slot"),
    sizesSlot: get("sizes-slot"),
    toastSlot: get("toast-slot"),
    summary: get("summary"),
    modeShelf: get("mode-shelf"),
    modePile: get("mode-pile"),
    regroupColor: get("regroup-color"),
  };
}

export async function boot(root: HTMLElement): Promise<void> {
  const els = buildShell(root);
  const api = new BricolageApi("");
  const store = new Store();
  const controller = new Controller(api, store, {
    confirmReplay: (msg) => window.confirm(msg),
    onError: (msg) => void showToast(els.toastSlot, msg),
  });

  const canvas = els.canvas as HTMLCanvasElement;
  const ctx = canvas.getContext("2d");
  const images = new ImageStore(
    (id, kind) => (kind === "cover" ? api.coverUrl(id) : api.spineUrl(id)),
    () => repaint(),
  );
  let painted: RenderedItem[] = [];

  const textureFill = (sample: ColorSampleWire): SampleFill => {
    if (!sample.texture_ref) return { css: null };
    const px = images.pixels(sample.texture_ref);
    if (!px) return { css: null };
    const crop = bestRegionCrop(px, sampleToColor(sample.hue_deg, sample.radius), sample.tolerance_de);
    if (!crop) return { css: null };
    const loaded = images.get(sample.texture_ref, "cover");
    if (!loaded) return { css: null };
    const tile = document.createElement("canvas");
    tile.width = 22;
    tile.height = 22;
    const tctx = tile.getContext("2d");
    if (!tctx) return { css: null };
    tctx.drawImage(
      loaded.source as CanvasImageSource,
      crop.sx, crop.sy, crop.sw, crop.sh,
      0, 0, tile.width, tile.height,
    );
    return { css: "transparent", element: tile };
  };

  const wheel = new ColorWheel(
    els.wheelSlot,
    (samples) => void controller.applyFilter({ ...store.get().filter, color_samples: samples }),
    { resolveFill: textureFill },
  );
  const timeline = new Timeline(els.timelineSlot, (range) =>
    void controller.applyFilter({ ...store.get().filter, year_range: range }),
  );
  const sizesWidget = new SizeFilter(els.sizesSlot, (indices) =>
    void controller.applyFilter({ ...store.get().filter, size_categories: indices }),
  );
  const ruler = new Ruler(els.rulerSlot, (factor, anchor) => {
    const rect = canvas.getBoundingClientRect();
    controller.zoomBy(factor, [anchor[0] - rect.left, anchor[1] - rect.top]);
  });
  const tooltip = new Tooltip(root, (id) => api.coverUrl(id));

  els.modeShelf.addEventListener("click", () => void controller.switchMode("shelf"));
  els.modePile.addEventListener("click", () => void controller.switchMode("pile"));
  els.regroupColor.addEventListener("click", () => {
    const n = Math.min(4, store.get().layout?.placements.length ?? 1);
    void controller.regroupPiles(n, true);
  });

  function repaint(): void {
    const state = store.get();
    if (!ctx || !state.layout) return;
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    ctx.fillStyle = "#14120e";
    ctx.fillRect(0, 0, canvas.width, canvas.height);
    const visible = new Set(store.visibleIds());
    painted = renderCanvas(ctx, {
      layout: state.layout,
      visible,
      anthologies: state.anthologies,
      scale: state.scale,
      images,
      hoverId: state.hover?.anthologyId,
    });
    els.noMatches.style.display =
      visible.size === 0 && !isEmptyFilter(state.filter) ? "block" : "none";
  }

  store.subscribe(() => {
    const state = store.get();
    ruler.setScale(state.scale);
    const samples = state.filterResult?.color_samples ?? state.filter.color_samples;
    wheel.setSamples(samples);
    timeline.setRange(state.filter.year_range);
    sizesWidget.setSelected(state.filter.size_categories);
    repaint();
  });

  attachCanvasInteractions(canvas, store, controller, {
    painted: () => painted,
    tooltip,
    promptFn: (message, current) => window.prompt(message, current),
  });

  await controller.init(CANVAS_W, CANVAS_H);
  const state = store.get();
  if (state.collection) {
    const [lo, hi] = state.collection.year_extent;
    els.summary.textContent =
      `${state.collection.anthology_count} anthologies, ` +
      `${state.collection.story_count} stories, ${lo}-${hi}`;
  }
  if (state.timeline && state.collection) {
    timeline.setData(state.timeline, state.collection.year_extent);
  }
  sizesWidget.setCategories(state.sizes);
  sizesWidget.setAverages(state.sizeAverages);
  repaint();
}

declare global {
  interface Window {
    bricolageBoot?: Promise<void>;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  window.bricolageBoot = boot(document.getElementById("app")!);
}
