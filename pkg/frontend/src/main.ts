import { ApiClient } from "./api.js";
import { render } from "./render.js";
import { WizardController } from "./wizard.js";

const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app mount point");
}

const api = new ApiClient("");
const controller: WizardController = new WizardController(api, () =>
  render(root, controller.state, controller)
);
render(root, controller.state, controller);
