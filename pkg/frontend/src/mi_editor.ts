// Parameter editor for one micro-instruction, opened from the palette.
// Values are edited in file units (tau/2pi, relative frequencies); the
// edited set definition is handed back to the caller, which sends it to the
// service on the next session creation and surfaces its diagnostics.

import type { MiDoc } from "./api";
import { applyRow, invertDrive, miToRows, parseNumeric } from "./mi_edit";

export interface MiEditorOptions {
  mi: MiDoc;
  doc?: Document;
  onSave: (mi: MiDoc) => void;
}

export class MiEditor {
  readonly root: HTMLElement;
  private mi: MiDoc;
  private doc: Document;

  constructor(private opts: MiEditorOptions) {
    this.doc = opts.doc ?? document;
    this.mi = JSON.parse(JSON.stringify(opts.mi));
    this.root = this.doc.createElement("form");
    this.root.className = "mi-editor";
    this.render();
  }

  private render(): void {
    this.root.textContent = "";
    const title = this.doc.createElement("h3");
    title.textContent = this.mi.name;
    this.root.append(title);

    for (const row of miToRows(this.mi)) {
      const label = this.doc.createElement("label");
      label.textContent = row.label;
      const input = this.doc.createElement("input");
      input.value = String(row.value);
      input.dataset.param = row.label;
      input.addEventListener("change", () => {
        const value = parseNumeric(input.value);
        if (value === null) {
          input.classList.add("invalid");
          input.value = String(row.value);  // block non-numeric input
          return;
        }
        input.classList.remove("invalid");
        this.mi = applyRow(this.mi, row, value);
        this.render();
      });
      label.append(input);
      this.root.append(label);
    }

    const invert = this.doc.createElement("button");
    invert.type = "button";
    invert.textContent = "invert drive";
    invert.dataset.action = "invert";
    invert.addEventListener("click", () => {
      this.mi = invertDrive(this.mi);
      this.render();
    });

    const save = this.doc.createElement("button");
    save.type = "button";
    save.textContent = "save";
    save.dataset.action = "save";
    save.addEventListener("click", () => this.opts.onSave(this.current()));

    this.root.append(invert, save);
  }

  current(): MiDoc {
    return JSON.parse(JSON.stringify(this.mi));
  }
}
