// @vitest-environment happy-dom

// Full-page flows driven through DOM events against the recorded service
// behavior: the canvas must always show exactly the ids of the last filter
// response, drops must send exactly one move request, and session state must
// survive a reload.

import { afterEach, describe, expect, it } from "vitest";

import { BricolageApi } from "../src/api.js";
import { wheelPosition } from "../src/color.js";
import { Controller, SESSION_KEY, type StorageLike } from "../src/controller.js";
import { attachCanvasInteractions } from "../src/interactions.js";
import { renderCanvas, type RenderedItem } from "../src/render.js";
import { Store } from "../src/state.js";
import { ColorWheel, wheelToLocal } from "../src/widgets/wheel.js";
import { SizeFilter } from "../src/widgets/sizes.js";
import { Timeline } from "../src/widgets/timeline.js";
import { Tooltip } from "../src/widgets/tooltip.js";
import { RecordingCtx } from "./helpers/draw.js";
import { FakeService } from "./helpers/fake_service.js";
import { loadFixture } from "./helpers/fixture.js";

const WHEEL_PX = 220;
const TRACK_PX = 320;

class MemoryStorage implements StorageLike {
  private map = new Map<string, string>();
  getItem(key: string): string | null {
    return this.map.get(key) ?? null;
  }
  setItem(key: string, value: string): void {
    this.map.set(key, value);
  }
  removeItem(key: string): void {
    this.map.delete(key);
  }
}

/** lets the unawaited widget-edit promises settle */
function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

function pointer(type: string, x: number, y: number): PointerEvent {
  return new PointerEvent(type, { clientX: x, clientY: y, bubbles: true });
}

interface Page {
  canvas: HTMLElement;
  store: Store;
  controller: Controller;
  wheel: ColorWheel;
  timeline: Timeline;
  sizes: SizeFilter;
  tooltip: Tooltip;
  errors: string[];
  prompts: string[];
  painted(): RenderedItem[];
  paintedIds(): string[];
  lastCtx(): RecordingCtx;
  dispose(): void;
}

/** Composes the page the way the browser entry point does. */
async function openPage(fake: FakeService, storage: StorageLike): Promise<Page> {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const store = new Store();
  const errors: string[] = [];
  const prompts: string[] = [];
  const controller = new Controller(new BricolageApi("", fake.fetch), store, {
    storage,
    confirmReplay: () => true,
    onError: (msg) => errors.push(msg),
  });

  const canvas = document.createElement("div");
  root.appendChild(canvas);
  let painted: RenderedItem[] = [];
  let lastCtx = new RecordingCtx();
  const repaint = () => {
    const state = store.get();
    if (!state.layout) return;
    lastCtx = new RecordingCtx();
    painted = renderCanvas(lastCtx, {
      layout: state.layout,
      visible: new Set(store.visibleIds()),
      anthologies: state.anthologies,
      scale: state.scale,
      hoverId: state.hover?.anthologyId,
    });
  };

  const wheel = new ColorWheel(
    root,
    (samples) =>
      void controller.applyFilter({ ...store.get().filter, color_samples: samples }),
    { sizePx: WHEEL_PX },
  );
  const timeline = new Timeline(
    root,
    (range) =>
      void controller.applyFilter({ ...store.get().filter, year_range: range }),
    { widthPx: TRACK_PX },
  );
  const sizes = new SizeFilter(root, (indices) =>
    void controller.applyFilter({ ...store.get().filter, size_categories: indices }),
  );
  const tooltip = new Tooltip(root, (id) => `/api/anthologies/${id}/cover`);
  const detach = attachCanvasInteractions(canvas, store, controller, {
    painted: () => painted,
    tooltip,
    promptFn: (message, current) => {
      prompts.push(`${message}:${current}`);
      return "evening reading";
    },
  });

  store.subscribe(() => {
    const state = store.get();
    wheel.setSamples(state.filterResult?.color_samples ?? state.filter.color_samples);
    timeline.setRange(state.filter.year_range);
    sizes.setSelected(state.filter.size_categories);
    repaint();
  });

  await controller.init(960, 620);
  const state = store.get();
  timeline.setData(state.timeline!, state.collection!.year_extent);
  sizes.setCategories(state.sizes);
  repaint();

  return {
    canvas,
    store,
    controller,
    wheel,
    timeline,
    sizes,
    tooltip,
    errors,
    prompts,
    painted: () => painted,
    paintedIds: () => painted.map((p) => p.id),
    lastCtx: () => lastCtx,
    dispose: () => {
      detach();
      root.remove();
    },
  };
}

const pages: Page[] = [];
async function open(fake: FakeService, storage: StorageLike): Promise<Page> {
  const page = await openPage(fake, storage);
  pages.push(page);
  return page;
}
afterEach(() => {
  while (pages.length) pages.pop()!.dispose();
});

describe("single source of truth", () => {
  it("keeps the canvas equal to the final filter response through a sample, a brush, and a drop, and persists the move across a reload", async () => {
    const fixture = loadFixture();
    const fake = new FakeService(fixture);
    const storage = new MemoryStorage();
    const page = await open(fake, storage);

    // everything visible before any filtering
    expect(page.paintedIds()).toHaveLength(10);

    // 1. place a color sample where the reddest cover sits on the wheel
    const redEntry = fixture.anthologies["g-001"].palette[0];
    const redPos = wheelPosition({
      L: redEntry.lab[0],
      a: redEntry.lab[1],
      b: redEntry.lab[2],
    });
    const [wx, wy] = wheelToLocal(redPos.hueDeg, redPos.radius, WHEEL_PX);
    page.wheel.element.dispatchEvent(
      new MouseEvent("dblclick", { clientX: wx, clientY: wy, bubbles: true }),
    );
    await flush();
    expect(fake.lastFilterIds).toContain("g-001");
    expect(fake.lastFilterIds).toContain("g-003"); // shares the red cover stock
    expect(page.paintedIds().sort()).toEqual([...fake.lastFilterIds!].sort());
    // the response round-trip tagged the sample with its texture anthology
    const square = page.wheel.element.querySelector<HTMLElement>(".wheel-sample")!;
    expect(square.dataset.textureRef).toBe("g-001");

    // 2. brush the years 1840-1930 on the timeline
    const track = page.timeline.element.querySelector<HTMLElement>(".timeline-track")!;
    track.dispatchEvent(pointer("pointerdown", page.timeline.yearToX(1840), 12));
    document.dispatchEvent(pointer("pointermove", page.timeline.yearToX(1930), 12));
    document.dispatchEvent(pointer("pointerup", page.timeline.yearToX(1930), 12));
    await flush();
    expect(page.store.get().filter.year_range).toEqual([1840, 1930]);
    expect(page.paintedIds().sort()).toEqual([...fake.lastFilterIds!].sort());
    expect(page.paintedIds()).toContain("g-001");

    // the filters AND together: the red-but-postwar anthology dropped out
    expect(fake.lastFilterIds!.length).toBeLessThanOrEqual(
      page.store.get().filterResult!.ids.length,
    );

    // 3. drag the top visible red anthology into the other pile. Items
    // stack, so grab the one whose center nothing else covers: the last
    // painted (topmost) of the two visible.
    const scale = page.store.get().scale;
    const anchor = page.store.get().layout!.piles.p1.anchor;
    const item = page.painted().at(-1)!;
    expect(item.id).toBe("g-003");
    const grabX = item.xPx + item.wPx / 2;
    const grabY = item.yPx + item.hPx / 2;
    const dropX = anchor[0] * scale.pxPerMm + scale.offsetX + item.wPx / 2;
    const dropY = anchor[1] * scale.pxPerMm + scale.offsetY + item.hPx / 2;

    page.canvas.dispatchEvent(pointer("pointerdown", grabX, grabY));
    document.dispatchEvent(pointer("pointermove", (grabX + dropX) / 2, (grabY + dropY) / 2));
    document.dispatchEvent(pointer("pointermove", dropX, dropY));
    // dragging repositions optimistically but must not talk to the service
    expect(fake.moveRequests()).toHaveLength(0);
    const midDrag = page.store
      .get()
      .layout!.placements.find((p) => p.id === "g-003")!;
    expect(midDrag.x_mm).toBeCloseTo(anchor[0], 6);

    document.dispatchEvent(pointer("pointerup", dropX, dropY));
    await flush();

    // exactly one move request per drop
    expect(fake.moveRequests()).toHaveLength(1);
    expect(fake.moveRequests()[0].body?.id).toBe("g-003");
    const moved = page.store
      .get()
      .layout!.placements.find((p) => p.id === "g-003")!;
    expect(moved.pile_id).toBe("p1");
    expect(moved.x_mm).toBeCloseTo(anchor[0], 6);
    expect(moved.y_mm).toBeCloseTo(anchor[1], 6);
    // the move surfaced the item above everything else
    expect(moved.z_order).toBe(10);
    const layout = page.store.get().layout!;
    expect(layout.piles.p1.members).toContain("g-003");
    expect(layout.piles.p0.members).not.toContain("g-003");
    expect(layout.version).toBe(1);

    // the canvas still shows exactly the final filter response
    expect(page.paintedIds().sort()).toEqual([...fake.lastFilterIds!].sort());
    expect(page.store.visibleIds()).toEqual(page.store.get().filterResult!.ids);
    expect(page.errors).toEqual([]);

    // 4. reload the page: same service, same browser storage
    page.dispose();
    const reloaded = await open(fake, storage);
    expect(fake.createdSessions).toBe(1); // session restored, not recreated
    expect(reloaded.store.get().sessionId).toBe("s-1");
    const persisted = reloaded.store
      .get()
      .layout!.placements.find((p) => p.id === "g-003")!;
    expect(persisted.pile_id).toBe("p1");
    expect(persisted.x_mm).toBeCloseTo(anchor[0], 6);
    expect(persisted.y_mm).toBeCloseTo(anchor[1], 6);
    expect(reloaded.store.get().layout!.version).toBe(1);
    // filters are page state, not session state: the fresh page shows all
    expect(reloaded.paintedIds()).toHaveLength(10);
  });

  it("shows nothing when the response is empty, never a locally guessed set", async () => {
    const fake = new FakeService(loadFixture());
    const page = await open(fake, new MemoryStorage());
    const track = page.timeline.element.querySelector<HTMLElement>(".timeline-track")!;
    // brush a single pre-collection year: 1840 maps to x=0
    track.dispatchEvent(pointer("pointerdown", 0, 12));
    document.dispatchEvent(pointer("pointerup", 0, 12));
    await flush();
    expect(page.store.get().filter.year_range).toEqual([1840, 1840]);
    expect(fake.lastFilterIds).toEqual(["g-001"]);
    expect(page.paintedIds()).toEqual(["g-001"]);

    // size category 3 holds the two largest; AND year 1840 leaves nothing
    page.sizes.element
      .querySelector<HTMLElement>('.size-cell[data-index="3"]')!
      .dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await flush();
    expect(fake.lastFilterIds).toEqual([]);
    expect(page.paintedIds()).toEqual([]);
    expect(page.lastCtx().ops("fillRect")).toHaveLength(0);
  });
});

describe("canvas interactions", () => {
  it("shows the tooltip over an item and hides it on empty canvas", async () => {
    const fake = new FakeService(loadFixture());
    const page = await open(fake, new MemoryStorage());
    const item = page.painted().at(-1)!;
    page.canvas.dispatchEvent(
      pointer("pointermove", item.xPx + item.wPx / 2, item.yPx + item.hPx / 2),
    );
    expect(page.tooltip.element.style.display).toBe("block");
    const title = page.store.get().anthologies.get(item.id)!.title;
    expect(page.tooltip.element.textContent).toContain(title);
    expect(page.store.get().hover?.anthologyId).toBe(item.id);

    page.canvas.dispatchEvent(pointer("pointermove", -200, -200));
    expect(page.tooltip.element.style.display).toBe("none");
    expect(page.store.get().hover).toBeNull();
  });

  it("labels a pile through the double-click prompt and paints the label", async () => {
    const fake = new FakeService(loadFixture());
    const page = await open(fake, new MemoryStorage());
    const member = page.painted().find((p) => p.pileId === "p0")!;
    page.canvas.dispatchEvent(
      new MouseEvent("dblclick", {
        clientX: member.xPx + member.wPx / 2,
        clientY: member.yPx + member.hPx / 2,
        bubbles: true,
      }),
    );
    await flush();
    expect(page.prompts).toEqual(["pile label:"]);
    expect(page.store.get().layout!.piles.p0.label).toBe("evening reading");
    const texts = page.lastCtx().ops("fillText");
    expect(texts.some((t) => t.args[0] === "evening reading")).toBe(true);
  });

  it("converges to the service's truth when a drop loses a version race", async () => {
    const fake = new FakeService(loadFixture());
    const page = await open(fake, new MemoryStorage());
    // grab the topmost item: its center is guaranteed to be uncovered
    const item = page.painted().at(-1)!;
    expect(item.id).toBe("g-010");
    const grabX = item.xPx + item.wPx / 2;
    const grabY = item.yPx + item.hPx / 2;

    page.canvas.dispatchEvent(pointer("pointerdown", grabX, grabY));
    document.dispatchEvent(pointer("pointermove", grabX + 60, grabY + 40));
    // another client wins the race while the pointer is still down
    await fake.fetch("/api/sessions/s-1/move", {
      method: "POST",
      body: JSON.stringify({ id: "g-001", x_mm: 3, y_mm: 3, expected_version: 0 }),
    });
    document.dispatchEvent(pointer("pointerup", grabX + 60, grabY + 40));
    await flush();

    const layout = page.store.get().layout!;
    // both the rival's move and the confirmed replay landed
    expect(layout.placements.find((p) => p.id === "g-001")!.x_mm).toBe(3);
    expect(layout.version).toBe(2);
    expect(page.errors).toEqual([]);
    const mine = fake.moveRequests().filter((r) => r.body?.id === "g-010");
    expect(mine).toHaveLength(2); // the stale attempt and the replay
    expect(mine[1].body?.expected_version).toBe(1);
  });

  it("ignores drags that start on empty canvas", async () => {
    const fake = new FakeService(loadFixture());
    const page = await open(fake, new MemoryStorage());
    page.canvas.dispatchEvent(pointer("pointerdown", -300, -300));
    document.dispatchEvent(pointer("pointermove", 100, 100));
    document.dispatchEvent(pointer("pointerup", 100, 100));
    await flush();
    expect(fake.moveRequests()).toHaveLength(0);
  });
});

describe("mode switching end to end", () => {
  it("renders spines at thickness on the shelf and covers in piles", async () => {
    const fake = new FakeService(loadFixture());
    const fixture = loadFixture();
    const page = await open(fake, new MemoryStorage());

    const pileItem = page.painted().find((p) => p.id === "g-001")!;
    const detail = fixture.anthologies["g-001"];
    const scale = page.store.get().scale;
    expect(pileItem.wPx).toBeCloseTo(detail.width_mm * scale.pxPerMm, 6);

    await page.controller.switchMode("shelf");
    const shelfItem = page.painted().find((p) => p.id === "g-001")!;
    const shelfScale = page.store.get().scale;
    expect(shelfItem.wPx).toBeCloseTo(detail.thickness_mm * shelfScale.pxPerMm, 6);
    expect(shelfItem.hPx).toBeCloseTo(detail.height_mm * shelfScale.pxPerMm, 6);
  });
});
