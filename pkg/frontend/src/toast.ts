// Non-blocking error toast; failures must never freeze the canvas.

const TOAST_MS = 4000;

export function showToast(parent: HTMLElement, message: string): HTMLElement {
  const el = parent.ownerDocument.createElement("div");
  el.className = "toast";
  el.textContent = message;
  parent.appendChild(el);
  const win = parent.ownerDocument.defaultView;
  win?.setTimeout(() => el.remove(), TOAST_MS);
  return el;
}
